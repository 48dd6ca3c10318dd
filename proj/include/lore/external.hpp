#pragma once

#include <memory>
#include <string>

#include "lore/blackbox.hpp"
#include "lore/schema.hpp"

namespace lore {

// Adapter to an explainee served over the line-delimited JSON protocol:
//   -> {"type":"hello","version":1,"features":[...]}
//   <- {"type":"ready","labels":["l0","l1"]}
//   -> {"type":"predict","id":k,"instances":[[v,...],...]}
//   <- {"type":"labels","id":k,"labels":["l",...]}
// Transport is either a child process (stdin/stdout) or HTTP POST of the
// same bodies to one endpoint. Exchanges are serialized internally.
std::unique_ptr<BlackBox> connect_external_process(const std::string& command,
                                                   const FeatureSchema& schema);

std::unique_ptr<BlackBox> connect_external_http(const std::string& url,
                                                const FeatureSchema& schema);

}  // namespace lore
