#include <charconv>
#include <map>
#include <optional>
#include <sstream>

#include "cpool/hashplan.hpp"

namespace cpool {

namespace {

constexpr int kPlanTextVersion = 1;

struct Entry {
  std::string value;
  std::size_t line;
  std::size_t column;  // column where the value starts
};

template <typename Int>
Int parse_int(std::string_view token, std::size_t line, std::size_t column) {
  Int value{};
  const auto* first = token.data();
  const auto* last = token.data() + token.size();
  if (!token.empty() && token.front() == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last || token.empty()) {
    throw ParseError(line, column, "expected an integer, found '" + std::string(token) + "'");
  }
  return value;
}

template <typename Int>
std::vector<Int> parse_list(const Entry& e) {
  std::vector<Int> out;
  std::size_t pos = 0;
  const std::string& s = e.value;
  while (pos < s.size()) {
    while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t')) ++pos;
    if (pos == s.size()) break;
    std::size_t end = pos;
    while (end < s.size() && s[end] != ' ' && s[end] != '\t') ++end;
    out.push_back(parse_int<Int>(std::string_view(s).substr(pos, end - pos), e.line, e.column + pos));
    pos = end;
  }
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

}  // namespace

std::string save_plan(const SketchPlan& plan) {
  validate(plan);
  std::ostringstream out;
  out << "version = " << kPlanTextVersion << '\n';
  out << "seed = " << plan.seed << '\n';
  out << "modes = " << plan.modes.size() << '\n';
  for (std::size_t m = 0; m < plan.modes.size(); ++m) {
    const ModeHash& mode = plan.modes[m];
    const std::string prefix = "modes[" + std::to_string(m) + "].";
    out << prefix << "input_size = " << mode.input_size << '\n';
    out << prefix << "output_size = " << mode.output_size << '\n';
    out << prefix << "hash_table =";
    for (std::size_t h : mode.hash_table) out << ' ' << h;
    out << '\n' << prefix << "sign_table =";
    for (std::int8_t s : mode.sign_table) out << ' ' << static_cast<int>(s);
    out << '\n';
  }
  return out.str();
}

SketchPlan load_plan(std::string_view text) {
  std::map<std::string, Entry, std::less<>> entries;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(pos, end - pos);
    ++line_no;
    pos = end + 1;

    const std::size_t hash = raw.find('#');
    const std::string_view line = trim(raw.substr(0, hash));
    if (line.empty()) continue;

    const std::size_t eq = raw.find('=');
    if (eq == std::string_view::npos || (hash != std::string_view::npos && eq > hash)) {
      throw ParseError(line_no, raw.find(line.front()) + 1, "expected 'key = value'");
    }
    const std::string_view key = trim(raw.substr(0, eq));
    if (key.empty()) throw ParseError(line_no, 1, "missing key before '='");
    std::string_view rest = raw.substr(eq + 1, hash == std::string_view::npos ? raw.npos : hash - eq - 1);
    std::size_t value_col = eq + 2;
    while (!rest.empty() && (rest.front() == ' ' || rest.front() == '\t')) {
      rest.remove_prefix(1);
      ++value_col;
    }
    rest = trim(rest);
    if (entries.count(key) != 0) {
      throw ParseError(line_no, raw.find(key.front()) + 1, "duplicate key '" + std::string(key) + "'");
    }
    entries.emplace(std::string(key), Entry{std::string(rest), line_no, value_col});
  }

  const std::size_t eof_line = line_no + 1;
  auto take = [&](const std::string& key) -> Entry {
    auto it = entries.find(key);
    if (it == entries.end()) throw ParseError(eof_line, 1, "missing key '" + key + "'");
    Entry e = std::move(it->second);
    entries.erase(it);
    return e;
  };

  const Entry version = take("version");
  if (parse_int<int>(version.value, version.line, version.column) != kPlanTextVersion) {
    throw ParseError(version.line, version.column, "unsupported plan version '" + version.value + "'");
  }
  const Entry seed = take("seed");
  const Entry count = take("modes");

  SketchPlan plan;
  plan.seed = parse_int<std::uint64_t>(seed.value, seed.line, seed.column);
  const auto mode_count = parse_int<std::size_t>(count.value, count.line, count.column);
  if (mode_count == 0) throw ParseError(count.line, count.column, "a plan needs at least one mode");

  for (std::size_t m = 0; m < mode_count; ++m) {
    const std::string prefix = "modes[" + std::to_string(m) + "].";
    const Entry in = take(prefix + "input_size");
    const Entry out = take(prefix + "output_size");
    const Entry hashes = take(prefix + "hash_table");
    const Entry signs = take(prefix + "sign_table");

    ModeHash mode;
    mode.input_size = parse_int<std::size_t>(in.value, in.line, in.column);
    mode.output_size = parse_int<std::size_t>(out.value, out.line, out.column);
    if (mode.input_size == 0) throw ParseError(in.line, in.column, "input_size must be >= 1");
    if (mode.output_size == 0) throw ParseError(out.line, out.column, "output_size must be >= 1");

    mode.hash_table = parse_list<std::size_t>(hashes);
    if (mode.hash_table.size() != mode.input_size) {
      throw ParseError(hashes.line, hashes.column,
                       "hash_table has " + std::to_string(mode.hash_table.size()) + " entries, expected " +
                           std::to_string(mode.input_size));
    }
    for (std::size_t h : mode.hash_table) {
      if (h >= mode.output_size) {
        throw ParseError(hashes.line, hashes.column,
                         "hash entry " + std::to_string(h) + " >= output_size");
      }
    }

    const auto raw_signs = parse_list<int>(signs);
    if (raw_signs.size() != mode.input_size) {
      throw ParseError(signs.line, signs.column,
                       "sign_table has " + std::to_string(raw_signs.size()) + " entries, expected " +
                           std::to_string(mode.input_size));
    }
    for (int s : raw_signs) {
      if (s != 1 && s != -1) throw ParseError(signs.line, signs.column, "sign entries must be 1 or -1");
      mode.sign_table.push_back(static_cast<std::int8_t>(s));
    }
    plan.modes.push_back(std::move(mode));
  }

  if (!entries.empty()) {
    auto first = entries.begin();
    for (auto it = entries.begin(); it != entries.end(); ++it) {
      if (it->second.line < first->second.line) first = it;
    }
    throw ParseError(first->second.line, 1, "unexpected key '" + first->first + "'");
  }
  return plan;
}

}  // namespace cpool
