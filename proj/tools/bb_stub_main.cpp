// Bundled stub explainee: serves a black box over the line-delimited JSON
// protocol, on stdio or HTTP. Fault modes exercise the adapter's error paths.

#include <iostream>
#include <memory>
#include <string>

#include "CLI11.hpp"
#include "httplib.h"
#include "json.hpp"

#include "lore/blackbox.hpp"
#include "lore/dataset.hpp"
#include "lore/error.hpp"

namespace {

using nlohmann::json;
using namespace lore;

struct Stub {
  FeatureSchema schema;
  std::unique_ptr<BlackBox> bb;  // null when constant_label >= 0
  int constant_label = -1;
  std::string fault = "none";

  std::vector<int> predict(const std::vector<Instance>& xs) {
    if (constant_label >= 0) return std::vector<int>(xs.size(), constant_label);
    return bb->predict(xs);
  }

  // Returns the reply for one request line, or nullopt for a handshake-only ack.
  std::string handle(const std::string& line) {
    json msg;
    try {
      msg = json::parse(line);
    } catch (const json::exception&) {
      return json{{"type", "error"}, {"message", "malformed request"}}.dump();
    }
    const std::string type = msg.value("type", "");
    if (type == "hello") {
      if (msg.value("version", 0) != 1)
        return json{{"type", "error"}, {"message", "unsupported version"}}.dump();
      return json{{"type", "ready"},
                  {"labels", {schema.labels[0], schema.labels[1]}}}.dump();
    }
    if (type == "predict") {
      const auto id = msg.value("id", std::uint64_t{0});
      std::vector<Instance> xs;
      for (const auto& row : msg.at("instances")) {
        Instance x;
        for (std::size_t i = 0; i < schema.arity(); ++i) {
          const auto& cell = row.at(i);
          if (schema.features[i].kind == FeatureKind::Categorical)
            x.push_back(Value::category(cell.get<std::string>()));
          else
            x.push_back(Value::number(cell.get<double>()));
        }
        xs.push_back(std::move(x));
      }
      auto labels = predict(xs);

      if (fault == "short" && !labels.empty()) labels.pop_back();
      if (fault == "garbage") return "this is not json";
      json names = json::array();
      for (auto l : labels) {
        if (fault == "badlabel")
          names.push_back("no-such-label");
        else
          names.push_back(schema.labels[static_cast<std::size_t>(l)]);
      }
      const auto reply_id = fault == "badid" ? id + 1 : id;
      return json{{"type", "labels"}, {"id", reply_id}, {"labels", names}}.dump();
    }
    return json{{"type", "error"}, {"message", "unknown message type"}}.dump();
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"wire-protocol stub black box"};
  std::string data_path, schema_path, constant, fault = "none";
  std::uint64_t seed = 42;
  int trees = 100;
  int http_port = 0;
  double train_frac = 1.0;
  app.add_option("--data", data_path, "training CSV for the served ensemble");
  app.add_option("--schema", schema_path, "schema sidecar JSON")->required();
  app.add_option("--seed", seed, "ensemble training seed");
  app.add_option("--trees", trees, "ensemble size");
  app.add_option("--constant", constant, "serve this label for everything (no training)");
  app.add_option("--fault", fault, "none | short | badlabel | badid | garbage");
  app.add_option("--http", http_port, "serve over HTTP on this port instead of stdio");
  app.add_option("--train-frac", train_frac,
                 "train on this fraction of --data (1.0 = all rows)");

  try {
    app.parse(argc, argv);

    Stub stub;
    stub.schema = FeatureSchema::load(schema_path);
    stub.fault = fault;
    if (!constant.empty()) {
      stub.constant_label = stub.schema.label_index(constant);
      if (stub.constant_label < 0) {
        std::cerr << "unknown label '" << constant << "'\n";
        return 1;
      }
    } else {
      if (data_path.empty()) {
        std::cerr << "either --data or --constant is required\n";
        return 1;
      }
      Dataset ds = impute_missing(load_dataset(data_path, schema_path));
      if (train_frac < 1.0) ds = train_test_split(ds, train_frac, seed).first;
      stub.bb = BaggedTreeEnsemble::train(ds, trees, seed);
    }

    if (http_port > 0) {
      httplib::Server server;
      server.Post(".*", [&stub](const httplib::Request& req, httplib::Response& res) {
        res.set_content(stub.handle(req.body), "application/json");
      });
      server.listen("127.0.0.1", http_port);
      return 0;
    }

    std::string line;
    while (std::getline(std::cin, line)) {
      if (line.empty()) continue;
      std::cout << stub.handle(line) << "\n" << std::flush;
    }
    return 0;
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "stub error: " << e.what() << "\n";
    return 2;
  }
}
