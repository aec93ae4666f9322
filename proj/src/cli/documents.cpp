#include "segscan/cli.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace segscan::cli {

BkpsDocument parse_bkps_document(const std::string& text, const std::string& source) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw IoError(source + ": invalid JSON: " + e.what());
  }
  if (!doc.is_object()) throw IoError(source + ": expected a JSON object");
  BkpsDocument out;
  if (auto it = doc.find("T"); it != doc.end()) {
    if (!it->is_number_integer()) throw IoError(source + ": \"T\" must be an integer");
    out.n_samples = it->get<Index>();
  }
  auto bkps = doc.find("bkps");
  if (bkps == doc.end() || !bkps->is_array()) {
    throw IoError(source + ": \"bkps\" must be an array of integers");
  }
  for (const auto& v : *bkps) {
    if (!v.is_number_integer()) throw IoError(source + ": \"bkps\" must hold integers");
    out.ends.push_back(v.get<Index>());
  }
  return out;
}

BkpsDocument read_bkps_document(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_bkps_document(text.str(), path.string());
}

std::string bkps_document(const Breakpoints& bkps) {
  nlohmann::json doc = {{"T", bkps.n_samples()}, {"bkps", bkps.ends()}};
  return doc.dump() + "\n";
}

}  // namespace segscan::cli
