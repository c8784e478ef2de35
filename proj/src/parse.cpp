#include "arithmoduli/parse.hpp"

#include <json.hpp>

#include <cctype>
#include <vector>

#include "arithmoduli/errors.hpp"

namespace arithmoduli {

namespace {

struct Pos {
  std::size_t line = 1, column = 1;
};

Pos position_of(std::string_view text, std::size_t offset) {
  Pos p;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++p.line;
      p.column = 1;
    } else {
      ++p.column;
    }
  }
  return p;
}

[[noreturn]] void fail(std::string_view text, std::size_t offset, const std::string& msg) {
  Pos p = position_of(text, offset);
  throw ParseError(msg, p.line, p.column);
}

std::size_t first_non_space(std::string_view text) {
  std::size_t i = 0;
  while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  return i;
}

// Byte offset of element `col` of row `row` (col = npos: the row itself) in a
// nested JSON array, found by tracking bracket depth.
std::size_t locate(std::string_view text, std::size_t row, std::size_t col) {
  int depth = 0;
  std::size_t r = 0, c = 0;
  bool in_string = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    char ch = text[i];
    if (in_string) {
      if (ch == '\\') ++i;
      else if (ch == '"') in_string = false;
      continue;
    }
    if (ch == '"') {
      in_string = true;
      if (depth == 2 && r == row && c == col) return i;
      continue;
    }
    if (ch == '[') {
      ++depth;
      if (depth == 2) {
        if (r == row && col == std::string_view::npos) return i;
        c = 0;
      }
      continue;
    }
    if (ch == ']') {
      if (depth == 2) ++r;
      --depth;
      continue;
    }
    if (ch == ',') {
      if (depth == 2) ++c;
      continue;
    }
    if (depth == 2 && r == row && c == col && !std::isspace(static_cast<unsigned char>(ch))) return i;
  }
  return 0;
}

std::size_t locate_flat(std::string_view text, std::size_t idx) {
  int depth = 0;
  std::size_t c = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    char ch = text[i];
    if (ch == '[') ++depth;
    else if (ch == ']') --depth;
    else if (ch == ',' && depth == 1) ++c;
    else if (depth == 1 && c == idx && !std::isspace(static_cast<unsigned char>(ch))) return i;
  }
  return 0;
}

bool json_integer(const nlohmann::json& v, Integer& out) {
  if (v.is_number_integer()) {
    out = v.is_number_unsigned() ? Integer(std::to_string(v.get<unsigned long long>()))
                                 : Integer(std::to_string(v.get<long long>()));
    return true;
  }
  if (v.is_string()) {
    const std::string& s = v.get_ref<const std::string&>();
    std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (i == s.size()) return false;
    for (std::size_t k = i; k < s.size(); ++k)
      if (!std::isdigit(static_cast<unsigned char>(s[k]))) return false;
    out = Integer(s[0] == '+' ? s.substr(1) : s);
    return true;
  }
  return false;
}

nlohmann::json parse_json(std::string_view text) {
  try {
    return nlohmann::json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    std::size_t off = e.byte > 0 ? e.byte - 1 : 0;
    std::string msg = e.what();
    auto pos = msg.find("parse error");
    fail(text, off, "malformed JSON" + (pos == std::string::npos ? std::string() : ": " + msg.substr(pos)));
  }
}

IntMatrix matrix_from_json(std::string_view text) {
  nlohmann::json j = parse_json(text);
  if (!j.is_array() || j.empty()) fail(text, first_non_space(text), "expected a non-empty array of rows");
  const std::size_t n = j.size();
  std::vector<std::vector<Integer>> rows;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& row = j[i];
    if (!row.is_array()) fail(text, locate(text, i, std::string_view::npos), "expected a row array");
    if (row.size() != n)
      fail(text, locate(text, i, std::string_view::npos),
           "row " + std::to_string(i + 1) + " has " + std::to_string(row.size()) + " entries, expected " +
               std::to_string(n));
    std::vector<Integer> r;
    for (std::size_t k = 0; k < n; ++k) {
      Integer z;
      if (!json_integer(row[k], z)) fail(text, locate(text, i, k), "expected an integer");
      r.push_back(std::move(z));
    }
    rows.push_back(std::move(r));
  }
  return IntMatrix(rows);
}

struct Token {
  Integer value;
  std::size_t offset;
};

// Reads one integer at text[i], advancing i.
Token read_integer(std::string_view text, std::size_t& i) {
  const std::size_t start = i;
  std::string digits;
  if (text[i] == '-' || text[i] == '+') {
    if (text[i] == '-') digits += '-';
    ++i;
  }
  std::size_t d0 = i;
  while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) digits += text[i++];
  if (i == d0) fail(text, start, "expected an integer");
  if (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i])) && text[i] != ',' && text[i] != ';')
    fail(text, i, std::string("unexpected character '") + text[i] + "'");
  return {Integer(digits), start};
}

IntMatrix matrix_from_text(std::string_view text) {
  std::vector<std::vector<Token>> rows;
  std::vector<std::size_t> row_start;
  std::vector<Token> cur;
  std::size_t cur_start = 0;
  std::size_t i = 0;
  auto end_row = [&]() {
    if (!cur.empty()) {
      rows.push_back(std::move(cur));
      row_start.push_back(cur_start);
    }
    cur.clear();
  };
  bool line_start = true;
  while (i < text.size()) {
    char ch = text[i];
    if (line_start && ch == '#') {
      while (i < text.size() && text[i] != '\n') ++i;
      continue;
    }
    if (ch == '\n' || ch == ';') {
      end_row();
      line_start = ch == '\n';
      ++i;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(ch)) || ch == ',') {
      ++i;
      continue;
    }
    line_start = false;
    if (cur.empty()) cur_start = i;
    cur.push_back(read_integer(text, i));
  }
  end_row();
  if (rows.empty()) fail(text, 0, "empty matrix");
  const std::size_t n = rows.size();
  std::vector<std::vector<Integer>> out;
  for (std::size_t r = 0; r < n; ++r) {
    if (rows[r].size() != n) {
      std::size_t off = rows[r].size() > n ? rows[r][n].offset : row_start[r];
      fail(text, off,
           "row " + std::to_string(r + 1) + " has " + std::to_string(rows[r].size()) +
               " entries, expected " + std::to_string(n));
    }
    std::vector<Integer> v;
    for (auto& t : rows[r]) v.push_back(std::move(t.value));
    out.push_back(std::move(v));
  }
  return IntMatrix(out);
}

}  // namespace

IntMatrix parse_matrix(std::string_view text) {
  std::size_t i = first_non_space(text);
  if (i < text.size() && text[i] == '[') return matrix_from_json(text);
  return matrix_from_text(text);
}

IntPoly parse_poly(std::string_view text) {
  std::size_t i = first_non_space(text);
  std::vector<Integer> c;
  if (i < text.size() && text[i] == '[') {
    nlohmann::json j = parse_json(text);
    if (!j.is_array()) fail(text, i, "expected an array of coefficients");
    for (std::size_t k = 0; k < j.size(); ++k) {
      Integer z;
      if (!json_integer(j[k], z)) fail(text, locate_flat(text, k), "expected an integer");
      c.push_back(std::move(z));
    }
  } else {
    while (i < text.size()) {
      if (std::isspace(static_cast<unsigned char>(text[i])) || text[i] == ',') {
        ++i;
        continue;
      }
      c.push_back(read_integer(text, i).value);
    }
  }
  if (c.empty()) fail(text, i < text.size() ? i : 0, "empty coefficient list");
  return IntPoly(std::move(c));
}

}  // namespace arithmoduli
