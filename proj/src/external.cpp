#include "lore/external.hpp"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cstring>
#include <mutex>
#include <string>

#include "httplib.h"
#include "json.hpp"

#include "lore/error.hpp"

namespace lore {

namespace {

using nlohmann::json;

json hello_message(const FeatureSchema& schema) {
  json features = json::array();
  for (const auto& f : schema.features) features.push_back(f.name);
  return json{{"type", "hello"}, {"version", 1}, {"features", features}};
}

json predict_message(const FeatureSchema& schema, std::uint64_t id,
                     const std::vector<Instance>& xs) {
  json instances = json::array();
  for (const auto& x : xs) {
    json row = json::array();
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (schema.features[i].kind == FeatureKind::Categorical)
        row.push_back(x[i].cat);
      else
        row.push_back(x[i].num);
    }
    instances.push_back(std::move(row));
  }
  return json{{"type", "predict"}, {"id", id}, {"instances", std::move(instances)}};
}

json parse_message(const std::string& line) {
  try {
    return json::parse(line);
  } catch (const json::exception& e) {
    throw ContractViolation(std::string("malformed message from black box: ") + e.what());
  }
}

void check_ready(const json& msg, const FeatureSchema& schema) {
  if (!msg.is_object() || msg.value("type", "") != "ready")
    throw ContractViolation("handshake: expected a 'ready' message, got: " + msg.dump());
  auto labels = msg.value("labels", std::vector<std::string>{});
  if (labels.size() != 2 || labels[0] != schema.labels[0] || labels[1] != schema.labels[1])
    throw ContractViolation("handshake: black box labels do not match the schema target");
}

std::vector<int> check_labels(const json& msg, const FeatureSchema& schema,
                              std::uint64_t id, std::size_t expected) {
  if (!msg.is_object() || msg.value("type", "") != "labels")
    throw ContractViolation("expected a 'labels' message, got: " + msg.dump());
  if (msg.value("id", std::uint64_t{0}) != id)
    throw ContractViolation("response id does not match the request id");
  if (!msg.contains("labels") || !msg["labels"].is_array())
    throw ContractViolation("'labels' message without a labels array");
  if (msg["labels"].size() != expected)
    throw ContractViolation("black box returned " + std::to_string(msg["labels"].size()) +
                            " labels for a batch of " + std::to_string(expected));
  std::vector<int> out;
  out.reserve(expected);
  for (const auto& item : msg["labels"]) {
    if (!item.is_string())
      throw ContractViolation("labels must be strings");
    const int label = schema.label_index(item.get<std::string>());
    if (label < 0)
      throw ContractViolation("black box returned unknown label '" +
                              item.get<std::string>() + "'");
    out.push_back(label);
  }
  return out;
}

// Child process speaking one JSON message per line over its stdio.
class ProcessBlackBox : public BlackBox {
 public:
  ProcessBlackBox(const std::string& command, const FeatureSchema& schema)
      : schema_(schema) {
    int to_child[2], from_child[2];
    if (pipe(to_child) != 0 || pipe(from_child) != 0)
      throw TransportError("pipe() failed: " + std::string(std::strerror(errno)));
    pid_ = fork();
    if (pid_ < 0) throw TransportError("fork() failed");
    if (pid_ == 0) {
      dup2(to_child[0], STDIN_FILENO);
      dup2(from_child[1], STDOUT_FILENO);
      close(to_child[0]);
      close(to_child[1]);
      close(from_child[0]);
      close(from_child[1]);
      execl("/bin/sh", "sh", "-c", command.c_str(), nullptr);
      _exit(127);
    }
    close(to_child[0]);
    close(from_child[1]);
    in_fd_ = from_child[0];
    out_fd_ = to_child[1];

    send_line(hello_message(schema_).dump());
    check_ready(parse_message(recv_line()), schema_);
  }

  ~ProcessBlackBox() override {
    if (out_fd_ >= 0) close(out_fd_);
    if (in_fd_ >= 0) close(in_fd_);
    if (pid_ > 0) {
      kill(pid_, SIGTERM);
      waitpid(pid_, nullptr, 0);
    }
  }

 protected:
  std::vector<int> do_predict(const std::vector<Instance>& xs) override {
    if (xs.empty()) return {};
    std::lock_guard<std::mutex> lock(mutex_);
    const std::uint64_t id = next_id_++;
    send_line(predict_message(schema_, id, xs).dump());
    return check_labels(parse_message(recv_line()), schema_, id, xs.size());
  }

 private:
  void send_line(const std::string& line) {
    std::string msg = line + "\n";
    std::size_t off = 0;
    while (off < msg.size()) {
      const ssize_t n = write(out_fd_, msg.data() + off, msg.size() - off);
      if (n <= 0) throw TransportError("black-box process closed its input");
      off += static_cast<std::size_t>(n);
    }
  }

  std::string recv_line() {
    for (;;) {
      const auto pos = buffer_.find('\n');
      if (pos != std::string::npos) {
        std::string line = buffer_.substr(0, pos);
        buffer_.erase(0, pos + 1);
        return line;
      }
      pollfd pfd{in_fd_, POLLIN, 0};
      const int ready = poll(&pfd, 1, timeout_ms_);
      if (ready == 0) throw TransportError("black-box process timed out");
      if (ready < 0) throw TransportError("poll() failed on black-box pipe");
      char chunk[4096];
      const ssize_t n = read(in_fd_, chunk, sizeof(chunk));
      if (n <= 0) throw TransportError("black-box process closed its output");
      buffer_.append(chunk, static_cast<std::size_t>(n));
    }
  }

  FeatureSchema schema_;
  pid_t pid_ = -1;
  int in_fd_ = -1;
  int out_fd_ = -1;
  int timeout_ms_ = 60000;
  std::string buffer_;
  std::uint64_t next_id_ = 1;
  std::mutex mutex_;
};

// Same message bodies POSTed to a single endpoint.
class HttpBlackBox : public BlackBox {
 public:
  HttpBlackBox(const std::string& url, const FeatureSchema& schema) : schema_(schema) {
    const auto scheme_end = url.find("://");
    if (scheme_end == std::string::npos)
      throw UsageError("http black box needs a full URL, got '" + url + "'");
    const auto rest = url.substr(scheme_end + 3);
    const auto slash = rest.find('/');
    host_ = url.substr(0, scheme_end + 3) +
            (slash == std::string::npos ? rest : rest.substr(0, slash));
    path_ = slash == std::string::npos ? "/" : rest.substr(slash);
    client_ = std::make_unique<httplib::Client>(host_);
    client_->set_read_timeout(60, 0);

    check_ready(post(hello_message(schema_).dump()), schema_);
  }

 protected:
  std::vector<int> do_predict(const std::vector<Instance>& xs) override {
    if (xs.empty()) return {};
    std::lock_guard<std::mutex> lock(mutex_);
    const std::uint64_t id = next_id_++;
    return check_labels(post(predict_message(schema_, id, xs).dump()), schema_, id,
                        xs.size());
  }

 private:
  json post(const std::string& body) {
    auto res = client_->Post(path_, body, "application/json");
    if (!res) throw TransportError("cannot reach black-box endpoint " + host_ + path_);
    if (res->status != 200)
      throw ContractViolation("black-box endpoint returned HTTP " +
                              std::to_string(res->status));
    return parse_message(res->body);
  }

  FeatureSchema schema_;
  std::string host_;
  std::string path_;
  std::unique_ptr<httplib::Client> client_;
  std::uint64_t next_id_ = 1;
  std::mutex mutex_;
};

}  // namespace

std::unique_ptr<BlackBox> connect_external_process(const std::string& command,
                                                   const FeatureSchema& schema) {
  return std::make_unique<ProcessBlackBox>(command, schema);
}

std::unique_ptr<BlackBox> connect_external_http(const std::string& url,
                                                const FeatureSchema& schema) {
  return std::make_unique<HttpBlackBox>(url, schema);
}

}  // namespace lore
