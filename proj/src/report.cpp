#include "rcprod/report.hpp"

#include <cmath>
#include <set>
#include <sstream>

#include "rcprod/common.hpp"

namespace rcprod::report {

namespace {

std::string scalar(const json& v) {
  if (v.is_number_float()) {
    const double d = v.get<double>();
    return std::isfinite(d) ? format_double(d) : "null";
  }
  return v.dump();
}

void write(std::ostringstream& os, const json& v, int depth) {
  const std::string pad(static_cast<std::size_t>(2 * (depth + 1)), ' ');
  const std::string close(static_cast<std::size_t>(2 * depth), ' ');
  if (v.is_object()) {
    if (v.empty()) {
      os << "{}";
      return;
    }
    os << "{\n";
    bool first = true;
    for (auto it = v.begin(); it != v.end(); ++it) {
      if (!first) os << ",\n";
      first = false;
      os << pad << json(it.key()).dump() << ": ";
      write(os, it.value(), depth + 1);
    }
    os << "\n" << close << "}";
  } else if (v.is_array()) {
    if (v.empty()) {
      os << "[]";
      return;
    }
    bool flat = true;
    for (const auto& e : v) flat = flat && !e.is_structured();
    if (flat) {
      os << "[";
      for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << scalar(v[i]);
      os << "]";
      return;
    }
    os << "[\n";
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) os << ",\n";
      os << pad;
      write(os, v[i], depth + 1);
    }
    os << "\n" << close << "]";
  } else {
    os << scalar(v);
  }
}

std::string compact(const json& v) {
  if (!v.is_structured()) return v.is_string() ? v.get<std::string>() : scalar(v);
  std::string s;
  if (v.is_array()) {
    s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ";" : "") + compact(v[i]);
    return s + "]";
  }
  s = "{";
  bool first = true;
  for (auto it = v.begin(); it != v.end(); ++it) {
    s += (first ? "" : ";") + it.key() + "=" + compact(it.value());
    first = false;
  }
  return s + "}";
}

std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string r = "\"";
  for (char c : s) {
    if (c == '"') r += '"';
    r += c;
  }
  return r + "\"";
}

bool is_report(const json& v) { return v.is_object() && v.contains("per_class") && v.contains("experiment"); }

void flatten(const json& v, const std::string& path, std::vector<std::pair<std::string, std::string>>& out) {
  if (v.is_object()) {
    for (auto it = v.begin(); it != v.end(); ++it) flatten(it.value(), path.empty() ? it.key() : path + "." + it.key(), out);
  } else if (v.is_array() && !v.empty() && v[0].is_structured()) {
    for (std::size_t i = 0; i < v.size(); ++i) flatten(v[i], path + "[" + std::to_string(i) + "]", out);
  } else {
    out.emplace_back(path, compact(v));
  }
}

}  // namespace

std::string format_json(const json& doc) {
  std::ostringstream os;
  write(os, doc, 0);
  os << "\n";
  return os.str();
}

std::string format_csv(const json& doc) {
  std::vector<json> reports;
  if (is_report(doc)) reports.push_back(doc);
  if (doc.is_array()) {
    bool all = !doc.empty();
    for (const auto& d : doc) all = all && is_report(d);
    if (all) reports.assign(doc.begin(), doc.end());
  }
  std::ostringstream os;
  if (reports.empty()) {
    std::vector<std::pair<std::string, std::string>> rows;
    flatten(doc, "", rows);
    os << "key,value\n";
    for (auto& [k, v] : rows) os << csv_cell(k) << "," << csv_cell(v) << "\n";
    return os.str();
  }
  std::set<std::string> keys;
  for (const auto& r : reports) {
    for (const auto& e : r["per_class"])
      for (auto it = e.begin(); it != e.end(); ++it) keys.insert(it.key());
    if (r["per_class"].empty())
      for (auto it = r["extrema"].begin(); it != r["extrema"].end(); ++it) keys.insert("extrema." + it.key());
  }
  os << "experiment,field,modulus,verdict";
  for (const auto& k : keys) os << "," << csv_cell(k);
  os << "\n";
  for (const auto& r : reports) {
    const std::string head = csv_cell(r["experiment"].get<std::string>()) + "," + csv_cell(r["field"].get<std::string>()) +
                             "," + csv_cell(r["modulus"].get<std::string>()) + "," + r["verdict"].get<std::string>();
    auto row = [&](const json& src, const std::string& prefix) {
      os << head;
      for (const auto& k : keys) {
        os << ",";
        if (k.rfind(prefix, 0) != 0) continue;
        const std::string sub = k.substr(prefix.size());
        if (src.contains(sub)) os << csv_cell(compact(src[sub]));
      }
      os << "\n";
    };
    if (r["per_class"].empty())
      row(r["extrema"], "extrema.");
    else
      for (const auto& e : r["per_class"]) row(e, "");
  }
  return os.str();
}

std::string format_text(const json& doc) {
  std::ostringstream os;
  auto one = [&](const json& r) {
    if (is_report(r)) {
      os << r["experiment"].get<std::string>() << "  " << r["field"].get<std::string>() << "  "
         << r["modulus"].get<std::string>() << "  verdict=" << r["verdict"].get<std::string>() << "\n";
      std::vector<std::pair<std::string, std::string>> rows;
      flatten(r["extrema"], "", rows);
      for (auto& [k, v] : rows) os << "    " << k << " = " << v << "\n";
      for (const auto& e : r["per_class"]) os << "    " << compact(e) << "\n";
    } else {
      std::vector<std::pair<std::string, std::string>> rows;
      flatten(r, "", rows);
      std::size_t w = 0;
      for (auto& [k, v] : rows) w = std::max(w, k.size());
      for (auto& [k, v] : rows) os << k << std::string(w - k.size() + 2, ' ') << v << "\n";
    }
  };
  if (doc.is_array() && !doc.empty() && is_report(doc[0]))
    for (const auto& r : doc) one(r);
  else
    one(doc);
  return os.str();
}

std::string format(const json& doc, const std::string& fmt) {
  if (fmt == "json") return format_json(doc);
  if (fmt == "csv") return format_csv(doc);
  if (fmt == "text") return format_text(doc);
  throw ValidationError("unknown format '" + fmt + "'");
}

}  // namespace rcprod::report
