#include <sys/wait.h>
#include <unistd.h>

#include <csignal>

#include "doctest.h"
#include "helpers.hpp"
#include "lore/blackbox.hpp"
#include "lore/dataset.hpp"
#include "lore/error.hpp"
#include "lore/external.hpp"

using namespace lore;

namespace {

DecisionTree leaf_tree(int label) {
  return DecisionTree(TreeNode::make_leaf(label, 1));
}

Dataset blobs() {
  return impute_missing(load_dataset(std::string(LORE_DATA_DIR) + "/blobs2d.csv",
                                     std::string(LORE_DATA_DIR) + "/blobs2d.schema.json"));
}

std::string stub_cmd(const std::string& extra) {
  return std::string("cmd:") + LORE_STUB_PATH + " --schema " + LORE_DATA_DIR +
         "/blobs2d.schema.json " + extra;
}

}  // namespace

TEST_CASE("ensemble voting: unanimity, tie rule, empty batch") {
  std::vector<DecisionTree> unanimous;
  unanimous.push_back(leaf_tree(1));
  unanimous.push_back(leaf_tree(1));
  unanimous.push_back(leaf_tree(1));
  BaggedTreeEnsemble all_one(std::move(unanimous));
  Instance x = {Value::number(0), Value::number(0)};
  CHECK(all_one.predict_one(x) == 1);

  std::vector<DecisionTree> split;
  split.push_back(leaf_tree(0));
  split.push_back(leaf_tree(1));
  BaggedTreeEnsemble tied(std::move(split));
  CHECK(tied.predict_one(x) == 0);  // tie -> first target label

  CHECK(tied.predict({}).empty());
}

TEST_CASE("ensemble prediction is invariant under tree reordering") {
  auto ds = blobs();
  auto trained = BaggedTreeEnsemble::train(ds, 7, 5);
  auto expected = trained->predict(ds.rows);

  // rebuild the same trees in reverse order via a fresh training run and
  // check the vote only depends on the multiset of trees: train twice,
  // verify determinism, then compare against a 7-tree ensemble assembled
  // from single-tree trainings is out of reach -- instead check the vote
  // identity directly on a hand-built pair.
  auto again = BaggedTreeEnsemble::train(ds, 7, 5);
  CHECK(again->predict(ds.rows) == expected);

  std::vector<DecisionTree> ab, ba;
  ab.push_back(leaf_tree(0));
  ab.push_back(leaf_tree(1));
  ab.push_back(leaf_tree(1));
  ba.push_back(leaf_tree(1));
  ba.push_back(leaf_tree(1));
  ba.push_back(leaf_tree(0));
  BaggedTreeEnsemble first(std::move(ab)), second(std::move(ba));
  Instance x = {Value::number(1), Value::number(1)};
  CHECK(first.predict_one(x) == second.predict_one(x));
}

TEST_CASE("query counter equals the sum of submitted batch sizes") {
  std::vector<DecisionTree> one;
  one.push_back(leaf_tree(0));
  BaggedTreeEnsemble counted(std::move(one));
  Instance x = {Value::number(0), Value::number(0)};
  counted.predict({x, x, x});
  counted.predict_one(x);
  counted.predict({});
  CHECK(counted.query_count() == 4);
}

TEST_CASE("single unsubsampled-equivalent tree fits separable data") {
  auto schema = testutil::loan_schema();
  Dataset ds;
  ds.schema = schema;
  for (int i = 0; i < 40; ++i) {
    ds.rows.push_back(testutil::loan_instance(i < 20 ? 20 : 60, "clerk", 1000));
    ds.labels.push_back(i < 20 ? 0 : 1);
  }
  auto bb = BaggedTreeEnsemble::train(ds, 1, 3);
  int correct = 0;
  auto got = bb->predict(ds.rows);
  for (std::size_t i = 0; i < ds.rows.size(); ++i) correct += got[i] == ds.labels[i];
  CHECK(correct == 40);
}

TEST_CASE("trained ensemble beats the majority-class rate on held-out german") {
  auto german = impute_missing(
      load_dataset(std::string(LORE_DATA_DIR) + "/german.csv",
                   std::string(LORE_DATA_DIR) + "/german.schema.json"));
  auto [train, test] = train_test_split(german, 0.8, 19);
  auto bb = BaggedTreeEnsemble::train(train, 100, 19);
  int correct = 0, majority = 0;
  auto got = bb->predict(test.rows);
  for (std::size_t i = 0; i < test.rows.size(); ++i) {
    correct += got[i] == test.labels[i];
    majority += test.labels[i] == 0;
  }
  const double n = static_cast<double>(test.size());
  const double majority_rate = std::max(majority, static_cast<int>(n) - majority) / n;
  CHECK(correct / n > majority_rate);
}

TEST_CASE("make_blackbox dispatches on the source prefix") {
  auto ds = blobs();
  CHECK(make_blackbox("builtin:ensemble", ds, 3) != nullptr);
  CHECK_THROWS_AS(make_blackbox("builtin:svm", ds, 3), UsageError);
  CHECK_THROWS_AS(make_blackbox("carrier-pigeon:coo", ds, 3), UsageError);
}

TEST_CASE("process adapter: constant stub answers for every instance in order") {
  auto ds = blobs();
  auto bb = connect_external_process(
      std::string(LORE_STUB_PATH) + " --schema " + LORE_DATA_DIR +
          "/blobs2d.schema.json --constant green",
      ds.schema);
  std::vector<Instance> batch(ds.rows.begin(), ds.rows.begin() + 100);
  auto labels = bb->predict(batch);
  REQUIRE(labels.size() == 100);
  for (int l : labels) CHECK(l == 1);  // green is the second schema label
  CHECK(bb->query_count() == 100);
}

TEST_CASE("process adapter: served ensemble matches a local twin exactly") {
  auto ds = blobs();
  auto local = BaggedTreeEnsemble::train(ds, 25, 11);
  auto remote = connect_external_process(
      std::string(LORE_STUB_PATH) + " --schema " + LORE_DATA_DIR +
          "/blobs2d.schema.json --data " + LORE_DATA_DIR +
          "/blobs2d.csv --trees 25 --seed 11",
      ds.schema);
  std::vector<Instance> batch(ds.rows.begin(), ds.rows.begin() + 200);
  CHECK(remote->predict(batch) == local->predict(batch));
}

TEST_CASE("process adapter: protocol faults raise ContractViolation") {
  auto ds = blobs();
  Instance x = ds.rows[0];
  for (const std::string fault : {"short", "badlabel", "badid", "garbage"}) {
    auto bb = connect_external_process(
        std::string(LORE_STUB_PATH) + " --schema " + LORE_DATA_DIR +
            "/blobs2d.schema.json --constant purple --fault " + fault,
        ds.schema);
    CHECK_THROWS_AS(bb->predict({x, x}), ContractViolation);
  }
}

TEST_CASE("process adapter: unreachable command raises TransportError") {
  auto ds = blobs();
  CHECK_THROWS_AS(connect_external_process("definitely-no-such-binary-zz", ds.schema),
                  TransportError);
}

TEST_CASE("http adapter round-trips through the stub server") {
  auto ds = blobs();
  const int port = 18640 + static_cast<int>(::getpid() % 997);
  const pid_t child = ::fork();
  REQUIRE(child >= 0);
  if (child == 0) {
    const std::string schema_arg = std::string(LORE_DATA_DIR) + "/blobs2d.schema.json";
    const std::string port_arg = std::to_string(port);
    ::execl(LORE_STUB_PATH, LORE_STUB_PATH, "--schema", schema_arg.c_str(), "--constant",
            "purple", "--http", port_arg.c_str(), (char*)nullptr);
    ::_exit(127);
  }
  std::unique_ptr<BlackBox> bb;
  for (int attempt = 0; attempt < 50; ++attempt) {
    try {
      bb = connect_external_http("http://127.0.0.1:" + std::to_string(port) + "/",
                                 ds.schema);
      break;
    } catch (const TransportError&) {
      ::usleep(100000);
    }
  }
  REQUIRE(bb != nullptr);
  auto labels = bb->predict({ds.rows[0], ds.rows[1], ds.rows[2]});
  CHECK(labels == std::vector<int>{0, 0, 0});
  ::kill(child, SIGTERM);
  int status = 0;
  ::waitpid(child, &status, 0);
}
