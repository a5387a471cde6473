#include "spherule/arrangement_file.hpp"

#include <fstream>
#include <optional>
#include <sstream>
#include <vector>

namespace spherule {

namespace {

struct Cursor {
  int line;
  std::size_t column;  // 1-based column of the current token
};

[[noreturn]] void fail(const Cursor& at, const std::string& msg) {
  throw Error(ErrorKind::ParseError, "line " + std::to_string(at.line) + ", column " + std::to_string(at.column) + ": " + msg);
}

std::size_t skip_space(std::string_view s, std::size_t i) {
  while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
  return i;
}

std::vector<Scalar> parse_list(std::string_view s, const Cursor& at) {
  std::vector<Scalar> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = s.find(',', start);
    std::string_view item = s.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    Cursor here{at.line, at.column + start};
    try {
      out.push_back(parse_scalar(item));
    } catch (const Error&) {
      fail(here, "expected a rational, found '" + std::string(item) + "'");
    }
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

int parse_count(std::string_view s, const Cursor& at, const char* what) {
  Scalar v;
  try {
    v = parse_scalar(s);
  } catch (const Error&) {
    fail(at, std::string("expected an integer for ") + what);
  }
  if (v.get_den() != 1 || v < 1 || v > 1000) fail(at, std::string(what) + " must be a positive integer");
  return static_cast<int>(v.get_num().get_si());
}

}  // namespace

Arrangement parse_arrangement(std::string_view text) {
  std::optional<int> n, m;
  Cursor m_at{0, 0};
  std::vector<std::vector<Scalar>> rows;
  struct Pending {
    Cursor at;
    std::optional<std::vector<Scalar>> center, alpha;
    std::optional<Scalar> radius_sq;
  };
  std::vector<Pending> spheres;

  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = text.find('\n', pos);
    std::string_view line = text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;
    if (const std::size_t hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    std::size_t i = skip_space(line, 0);
    if (i >= line.size()) continue;
    const std::size_t colon = line.find(':', i);
    if (colon == std::string_view::npos) fail({line_no, i + 1}, "expected 'key: value'");
    std::string_view key = line.substr(i, colon - i);
    while (!key.empty() && (key.back() == ' ' || key.back() == '\t')) key.remove_suffix(1);
    std::size_t v = skip_space(line, colon + 1);
    std::string_view value = line.substr(v);
    while (!value.empty() && (value.back() == ' ' || value.back() == '\t' || value.back() == '\r')) value.remove_suffix(1);
    const Cursor value_at{line_no, v + 1};

    if (key == "n") {
      if (n) fail({line_no, i + 1}, "duplicate 'n'");
      n = parse_count(value, value_at, "n");
    } else if (key == "m") {
      if (m) fail({line_no, i + 1}, "duplicate 'm'");
      m = parse_count(value, value_at, "m");
      m_at = value_at;
    } else if (key == "sphere") {
      Pending p{{line_no, i + 1}, {}, {}, {}};
      std::size_t t = 0;
      while (t < value.size()) {
        t = skip_space(value, t);
        if (t >= value.size()) break;
        std::size_t end = t;
        while (end < value.size() && value[end] != ' ' && value[end] != '\t') ++end;
        std::string_view field = value.substr(t, end - t);
        const Cursor field_at{line_no, v + t + 1};
        const std::size_t eq = field.find('=');
        if (eq == std::string_view::npos) fail(field_at, "expected 'name=value'");
        std::string_view name = field.substr(0, eq);
        const Cursor list_at{line_no, field_at.column + eq + 1};
        std::vector<Scalar> list = parse_list(field.substr(eq + 1), list_at);
        if (name == "center") {
          if (p.center) fail(field_at, "duplicate 'center'");
          p.center = std::move(list);
        } else if (name == "radius_sq") {
          if (p.radius_sq) fail(field_at, "duplicate 'radius_sq'");
          if (list.size() != 1) fail(list_at, "radius_sq takes one rational");
          p.radius_sq = list.front();
        } else if (name == "alpha") {
          if (p.alpha) fail(field_at, "duplicate 'alpha'");
          p.alpha = std::move(list);
        } else {
          fail(field_at, "unknown sphere field '" + std::string(name) + "'");
        }
        t = end;
      }
      spheres.push_back(std::move(p));
    } else {
      fail({line_no, i + 1}, "unknown key '" + std::string(key) + "'");
    }
  }

  if (!n) fail({line_no, 1}, "missing 'n'");
  if (spheres.empty()) fail({line_no, 1}, "no spheres declared");
  if (m && *m != static_cast<int>(spheres.size())) {
    throw Error(ErrorKind::InconsistentDimension, "line " + std::to_string(m_at.line) + ": m = " + std::to_string(*m) +
                                                      " but " + std::to_string(spheres.size()) + " spheres are declared");
  }
  for (const auto& p : spheres) {
    const bool by_center = p.center || p.radius_sq;
    if (by_center && p.alpha) fail(p.at, "use either center/radius_sq or alpha, not both");
    if (!by_center && !p.alpha) fail(p.at, "sphere needs center/radius_sq or alpha");
    std::vector<Scalar> row;
    if (p.alpha) {
      if (static_cast<int>(p.alpha->size()) != *n + 1) {
        throw Error(ErrorKind::InconsistentDimension, "line " + std::to_string(p.at.line) + ": alpha needs n+1 = " +
                                                          std::to_string(*n + 1) + " entries");
      }
      row = *p.alpha;
    } else {
      if (!p.center || !p.radius_sq) fail(p.at, "center and radius_sq must both be given");
      if (static_cast<int>(p.center->size()) != *n) {
        throw Error(ErrorKind::InconsistentDimension, "line " + std::to_string(p.at.line) + ": center needs n = " +
                                                          std::to_string(*n) + " entries");
      }
      Scalar c2(0);
      for (const auto& c : *p.center) {
        row.push_back(-c);
        c2 += c * c;
      }
      row.push_back(c2 - *p.radius_sq);
    }
    rows.push_back(std::move(row));
  }
  return Arrangement(*n, std::move(rows));
}

std::string serialize_arrangement(const Arrangement& arr) {
  std::ostringstream out;
  out << "n: " << arr.n() << "\n";
  out << "m: " << arr.m() << "\n";
  for (int j = 1; j <= arr.m(); ++j) {
    out << "sphere: alpha=";
    for (int nu = 1; nu <= arr.n(); ++nu) out << to_string(arr.alpha(j, nu)) << ",";
    out << to_string(arr.alpha(j, 0)) << "\n";
  }
  return out.str();
}

Arrangement load_arrangement(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open arrangement file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_arrangement(buf.str());
}

}  // namespace spherule
