#include "shtrim/builtins.hpp"

#include <json.hpp>

namespace shtrim {

void BuiltinTable::add(const PredKey& key, std::vector<int> grounded_positions) {
  for (int p : grounded_positions) {
    if (p < 1 || p > key.arity)
      throw std::logic_error("builtin summary position out of range for " + key.str());
  }
  table_[key] = std::move(grounded_positions);
}

const std::vector<int>* BuiltinTable::lookup(const PredKey& key) const {
  auto it = table_.find(key);
  return it == table_.end() ? nullptr : &it->second;
}

BuiltinTable BuiltinTable::load_json(const std::string& json_text) {
  BuiltinTable out;
  nlohmann::json doc = nlohmann::json::parse(json_text);
  if (!doc.is_object()) throw std::runtime_error("builtin table must be a JSON object");
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    const std::string& spec = it.key();
    auto slash = spec.rfind('/');
    if (slash == std::string::npos)
      throw std::runtime_error("builtin key must be name/arity: " + spec);
    PredKey key{spec.substr(0, slash), std::stoi(spec.substr(slash + 1))};
    std::vector<int> positions;
    for (const auto& v : it.value()) positions.push_back(v.get<int>());
    out.add(key, std::move(positions));
  }
  return out;
}

}  // namespace shtrim
