#include "io.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include <json.hpp>

#include "sqt/error.hpp"

namespace sqt::io {

namespace {

std::string trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

Error parse_error(int line, int col, const std::string& why) {
  return Error(ErrorKind::ParseError, "line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + why);
}

std::optional<Corner> corner_of(const std::string& s) {
  static const std::map<std::string, Corner> names{
      {"BL", Corner::BL}, {"BR", Corner::BR}, {"TR", Corner::TR}, {"TL", Corner::TL}};
  auto it = names.find(s);
  if (it == names.end()) return std::nullopt;
  return it->second;
}

// "3" or "3:TR"; squares from 1.
CornerRef parse_corner(const std::string& item, int n, int line, int col) {
  const auto colon = item.find(':');
  const std::string sq = trim(item.substr(0, colon));
  const std::string cn = colon == std::string::npos ? "BL" : trim(item.substr(colon + 1));
  if (sq.empty() || !std::all_of(sq.begin(), sq.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
    throw parse_error(line, col, "bad square in marked point '" + item + "'");
  const int s = std::stoi(sq);
  if (s < 1 || s > n) throw parse_error(line, col, "square " + sq + " out of range 1.." + std::to_string(n));
  auto c = corner_of(cn);
  if (!c) throw parse_error(line, col, "bad corner '" + cn + "' (expected BL, BR, TR or TL)");
  return {s - 1, *c};
}

Marking parse_marking(const std::string& value, int n, int line, int col) {
  if (value == "singular") return MarkSingular{};
  if (value == "all") return MarkAll{};
  MarkExplicit m;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (trim(item).empty()) continue;
    m.corners.push_back(parse_corner(trim(item), n, line, col));
  }
  if (m.corners.empty()) throw parse_error(line, col, "empty marked list");
  return m;
}

// Largest square number mentioned in a cycle string.
int max_square(const std::string& cycles) {
  int best = 0, cur = -1;
  for (char c : cycles + " ") {
    if (std::isdigit(static_cast<unsigned char>(c))) {
      cur = (cur < 0 ? 0 : cur * 10) + (c - '0');
    } else {
      best = std::max(best, cur);
      cur = -1;
    }
  }
  return best;
}

}  // namespace

Origami parse_origami_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string physical;
  std::map<std::string, std::pair<std::string, std::pair<int, int>>> fields;
  int line = 0;
  while (std::getline(in, physical)) {
    ++line;
    const auto hash = physical.find('#');
    if (hash != std::string::npos) physical.resize(hash);
    // ';' separates entries on one line
    std::size_t offset = 0;
    while (offset <= physical.size()) {
      std::size_t semi = physical.find(';', offset);
      if (semi == std::string::npos) semi = physical.size();
      const std::string raw = physical.substr(offset, semi - offset);
      const int base = static_cast<int>(offset);
      offset = semi + 1;
      if (trim(raw).empty()) continue;
      const auto eq = raw.find('=');
      if (eq == std::string::npos) throw parse_error(line, base + 1, "expected key=value");
      const std::string key = trim(raw.substr(0, eq));
      if (key != "n" && key != "h" && key != "v" && key != "marked")
        throw parse_error(line, base + 1, "unknown key '" + key + "'");
      if (fields.count(key)) throw parse_error(line, base + 1, "duplicate key '" + key + "'");
      std::size_t start = eq + 1;
      while (start < raw.size() && std::isspace(static_cast<unsigned char>(raw[start]))) ++start;
      fields[key] = {trim(raw.substr(eq + 1)), {line, base + static_cast<int>(start) + 1}};
    }
  }
  int n = 0;
  if (fields.count("n")) {
    const auto& [value, pos] = fields["n"];
    if (value.empty() || !std::all_of(value.begin(), value.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
      throw parse_error(pos.first, pos.second, "n must be a positive integer");
    n = std::stoi(value);
  } else {
    for (const char* k : {"h", "v"})
      if (fields.count(k)) n = std::max(n, max_square(fields[k].first));
  }
  if (n < 1) throw parse_error(1, 1, "n must be a positive integer");

  auto cycles = [&](const char* key) {
    if (!fields.count(key)) throw parse_error(line + 1, 1, std::string("missing '") + key + "='");
    const auto& [value, pos] = fields[key];
    try {
      return parse_cycles(n, value);
    } catch (const Error& e) {
      // The cycle parser counts columns within the value.
      std::string why = e.what();
      int inner = 1;
      if (std::sscanf(why.c_str(), "column %d: ", &inner) == 1) why = why.substr(why.find(": ") + 2);
      throw parse_error(pos.first, pos.second + inner - 1, why);
    }
  };
  // Syntax errors in a present field take precedence over a missing one.
  std::optional<Perm> h, v;
  if (fields.count("h")) h = cycles("h");
  if (fields.count("v")) v = cycles("v");
  if (!h) h = cycles("h");
  if (!v) v = cycles("v");
  Marking marking = MarkSingular{};
  if (fields.count("marked")) {
    const auto& [value, pos] = fields["marked"];
    marking = parse_marking(value, n, pos.first, pos.second);
  }
  return build_origami(n, *h, *v, marking);
}

Origami parse_origami_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    // byte offsets only; report line and column from them
    int line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') ++line, col = 1;
      else ++col;
    }
    throw parse_error(line, col, "invalid JSON");
  }
  if (!j.is_object()) throw parse_error(1, 1, "origami JSON must be an object");
  auto perm = [&](const char* key, int n) {
    if (!j.contains(key)) throw parse_error(1, 1, std::string("missing \"") + key + "\"");
    const auto& a = j[key];
    if (!a.is_array()) throw parse_error(1, 1, std::string("\"") + key + "\" must be an array");
    Perm p(n);
    for (int i = 0; i < n; ++i) p[i] = i;
    const bool image_list = !a.empty() && a[0].is_number_integer();
    if (image_list) {
      if (static_cast<int>(a.size()) != n) throw parse_error(1, 1, std::string("\"") + key + "\" needs n entries");
      for (int i = 0; i < n; ++i) {
        if (!a[i].is_number_integer()) throw parse_error(1, 1, "mixed permutation entries");
        p[i] = a[i].get<int>() - 1;
      }
      return p;
    }
    std::string text_form;
    for (const auto& cyc : a) {
      if (!cyc.is_array()) throw parse_error(1, 1, std::string("\"") + key + "\" cycles must be arrays");
      text_form += "(";
      for (const auto& x : cyc) {
        if (!x.is_number_integer()) throw parse_error(1, 1, "cycle entries must be integers");
        text_form += std::to_string(x.get<int>()) + " ";
      }
      text_form += ")";
    }
    return parse_cycles(n, text_form);
  };
  if (!j.contains("n") || !j["n"].is_number_integer() || j["n"].get<int>() < 1)
    throw parse_error(1, 1, "\"n\" must be a positive integer");
  const int n = j["n"].get<int>();
  const Perm h = perm("h", n), v = perm("v", n);
  Marking marking = MarkSingular{};
  if (j.contains("marked")) {
    const auto& m = j["marked"];
    if (m.is_string()) {
      marking = parse_marking(m.get<std::string>(), n, 1, 1);
    } else if (m.is_array()) {
      MarkExplicit e;
      for (const auto& x : m) {
        if (x.is_number_integer()) e.corners.push_back(parse_corner(std::to_string(x.get<int>()), n, 1, 1));
        else if (x.is_string()) e.corners.push_back(parse_corner(x.get<std::string>(), n, 1, 1));
        else throw parse_error(1, 1, "marked entries must be strings or integers");
      }
      marking = e;
    } else {
      throw parse_error(1, 1, "\"marked\" must be a string or an array");
    }
  }
  return build_origami(n, h, v, marking);
}

Origami parse_origami(std::string_view text) {
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    return c == '{' ? parse_origami_json(text) : parse_origami_text(text);
  }
  throw parse_error(1, 1, "empty input");
}

std::string origami_to_json(const Origami& o) {
  auto cycles = [](const Perm& p) {
    nlohmann::json a = nlohmann::json::array();
    for (const auto& c : perm_cycles(p)) {
      if (c.size() < 2) continue;
      nlohmann::json cj = nlohmann::json::array();
      for (int s : c) cj.push_back(s + 1);
      a.push_back(cj);
    }
    return a;
  };
  nlohmann::json j;
  j["n"] = o.n();
  j["h"] = cycles(o.h());
  j["v"] = cycles(o.v());
  // The text form already picks the shortest faithful marking description.
  const std::string text = o.to_text();
  const auto at = text.find("marked=");
  std::string marked = trim(text.substr(at + 7));
  if (marked == "all" || marked == "singular") {
    j["marked"] = marked;
  } else {
    j["marked"] = nlohmann::json::array();
    std::stringstream ss(marked);
    std::string item;
    while (std::getline(ss, item, ',')) j["marked"].push_back(item);
  }
  return j.dump();
}

Origami load_origami(const std::string& source) {
  if (source == "T1") return examples::torus();
  if (source == "O2") return examples::two_torus();
  if (source == "L3") return examples::l_shape();
  if (source == "W4") return examples::one_cylinder_h2();
  std::error_code ec;
  if (source.find('=') == std::string::npos && source.find('{') == std::string::npos) {
    if (!std::filesystem::is_regular_file(source, ec))
      throw Error(ErrorKind::ParseError, "no such origami file: " + source);
  }
  if (std::filesystem::is_regular_file(source, ec)) {
    std::ifstream in(source);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_origami(buf.str());
  }
  return parse_origami(source);
}

}  // namespace sqt::io
