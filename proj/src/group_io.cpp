#include "helpkit/group_io.hpp"

#include <fstream>
#include <sstream>
#include <vector>

#include "helpkit/permutation.hpp"

namespace helpkit {

namespace {

struct Line {
  std::size_t number;
  std::string text;
};

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<Line> significant_lines(std::string_view text) {
  std::vector<Line> out;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t number = 0;
  while (std::getline(in, raw)) {
    ++number;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.resize(hash);
    raw = trim(raw);
    if (!raw.empty()) out.push_back({number, raw});
  }
  return out;
}

std::uint64_t parse_count(const Line& line, const std::string& token) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(token, &used);
    if (used != token.size() || v < 0) throw std::invalid_argument("negative");
    return static_cast<std::uint64_t>(v);
  } catch (const std::exception&) {
    throw ParseError(line.number, "expected a non-negative integer, got \"" + token + "\"");
  }
}

std::vector<std::string> words(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  std::string w;
  while (in >> w) out.push_back(w);
  return out;
}

// "gen <cycles>" -> cycles text
std::string gen_body(const Line& line) {
  if (line.text.rfind("gen", 0) != 0) throw ParseError(line.number, "expected \"gen <cycles>\"");
  return trim(line.text.substr(3));
}

}  // namespace

ParsedGroup parse_group_text(std::string_view text) {
  const auto lines = significant_lines(text);
  if (lines.empty()) throw InvalidInput("empty group definition");
  const auto head = words(lines[0].text);
  const std::string& stanza = head[0];
  ParsedGroup out;

  auto wrap = [&](const Line& line, auto&& fn) {
    try {
      return fn();
    } catch (const ParseError&) {
      throw;
    } catch (const CapExceeded&) {
      throw;
    } catch (const GroupError& e) {
      throw ParseError(line.number, e.what());
    }
  };

  if (stanza == "perm") {
    if (head.size() != 1) throw ParseError(lines[0].number, "\"perm\" takes no arguments");
    nlohmann::json gens = nlohmann::json::array();
    std::vector<Permutation> perms;
    for (std::size_t i = 1; i < lines.size(); ++i) {
      const std::string body = gen_body(lines[i]);
      perms.push_back(wrap(lines[i], [&] { return Permutation::parse(body); }));
      gens.push_back(perms.back().to_cycles());
    }
    out.group = closure(perms);
    out.recipe = nlohmann::json{{"kind", "perm"}, {"generators", gens}};
    return out;
  }

  if (stanza == "cyclic") {
    if (head.size() != 2) throw ParseError(lines[0].number, "expected \"cyclic <n>\"");
    if (lines.size() > 1) throw ParseError(lines[1].number, "unexpected line after cyclic stanza");
    const auto n = parse_count(lines[0], head[1]);
    if (n == 0) throw ParseError(lines[0].number, "order must be positive");
    if (n > kDefaultOrderCap) throw CapExceeded("line " + std::to_string(lines[0].number) + ": order exceeds cap");
    out.recipe = nlohmann::json{{"kind", "cyclic"}, {"n", n}};
    out.group = cyclic_group(n);
    return out;
  }

  if (stanza == "cayley") {
    if (head.size() != 2) throw ParseError(lines[0].number, "expected \"cayley <n>\"");
    const auto n = parse_count(lines[0], head[1]);
    if (n == 0) throw ParseError(lines[0].number, "order must be positive");
    if (n > kDefaultOrderCap) throw CapExceeded("line " + std::to_string(lines[0].number) + ": order exceeds cap");
    if (lines.size() < n + 1) throw ParseError(lines.back().number, "expected " + std::to_string(n) + " table rows");
    std::vector<Element> table;
    table.reserve(n * n);
    for (std::size_t r = 0; r < n; ++r) {
      const auto& line = lines[r + 1];
      const auto cells = words(line.text);
      if (cells.size() != n) throw ParseError(line.number, "row has " + std::to_string(cells.size()) + " entries, expected " + std::to_string(n));
      for (const auto& c : cells) {
        const auto v = parse_count(line, c);
        if (v >= n) throw ParseError(line.number, "entry " + c + " out of range");
        table.push_back(static_cast<Element>(v));
      }
    }
    std::vector<std::string> labels;
    for (std::size_t i = n + 1; i < lines.size(); ++i) {
      const auto& line = lines[i];
      const auto w = words(line.text);
      if (w.size() < 3 || w[0] != "label") throw ParseError(line.number, "expected \"label <i> <text>\"");
      const auto idx = parse_count(line, w[1]);
      if (idx >= n) throw ParseError(line.number, "label index out of range");
      if (labels.empty()) {
        labels.resize(n);
        for (std::size_t k = 0; k < n; ++k) labels[k] = std::to_string(k);
      }
      labels[idx] = trim(line.text.substr(line.text.find(w[1]) + w[1].size()));
    }
    out.group = wrap(lines[0], [&] { return FiniteGroup::from_table(std::move(table), n, std::move(labels)); });
    return out;
  }

  if (stanza == "semidirect") {
    if (head.size() != 2) throw ParseError(lines[0].number, "expected \"semidirect <n>\"");
    const auto n = parse_count(lines[0], head[1]);
    if (n == 0) throw ParseError(lines[0].number, "order must be positive");
    nlohmann::json gens = nlohmann::json::array();
    std::vector<std::int64_t> images;
    std::vector<Permutation> perms;
    for (std::size_t i = 1; i < lines.size(); ++i) {
      const auto& line = lines[i];
      const std::string body = gen_body(line);
      const auto arrow = body.find("->");
      if (arrow == std::string::npos) throw ParseError(line.number, "expected \"gen <cycles> -> <exponent>\"");
      auto p = wrap(line, [&] { return Permutation::parse(trim(body.substr(0, arrow))); });
      if (p.is_identity() || std::find(perms.begin(), perms.end(), p) != perms.end())
        throw ParseError(line.number, "complement generators must be distinct and non-trivial");
      const std::string exp = trim(body.substr(arrow + 2));
      try {
        std::size_t used = 0;
        images.push_back(std::stoll(exp, &used));
        if (used != exp.size()) throw std::invalid_argument("trailing");
      } catch (const std::exception&) {
        throw ParseError(line.number, "bad exponent \"" + exp + "\"");
      }
      gens.push_back(p.to_cycles());
      perms.push_back(std::move(p));
    }
    nlohmann::json recipe = {{"kind", "semidirect"},
                             {"n", n},
                             {"complement", {{"kind", "perm"}, {"generators", gens}}},
                             {"images", images}};
    auto built = wrap(lines[0], [&] { return build_from_recipe(recipe); });
    out.group = std::move(built.group);
    out.a = built.a;
    out.recipe = recipe;
    return out;
  }

  if (stanza == "hamiltonian") {
    std::vector<std::uint64_t> odd;
    std::uint64_t rank = 0;
    for (std::size_t i = 1; i < lines.size(); ++i) {
      const auto w = words(lines[i].text);
      if (w[0] == "odd") {
        for (std::size_t k = 1; k < w.size(); ++k) {
          const auto v = parse_count(lines[i], w[k]);
          if (v == 0 || v % 2 == 0) throw ParseError(lines[i].number, "odd factor " + w[k] + " is not odd");
          odd.push_back(v);
        }
      } else if (w[0] == "two_rank" && w.size() == 2) {
        rank = parse_count(lines[i], w[1]);
        if (rank > 12) throw CapExceeded("line " + std::to_string(lines[i].number) + ": two_rank exceeds cap");
      } else {
        throw ParseError(lines[i].number, "expected \"odd ...\" or \"two_rank <r>\"");
      }
    }
    nlohmann::json recipe = {{"kind", "hamiltonian"}, {"odd", odd}, {"two_rank", rank}};
    out.group = build_from_recipe(recipe).group;
    out.recipe = recipe;
    return out;
  }

  throw ParseError(lines[0].number, "unknown stanza \"" + stanza + "\"");
}

ParsedGroup read_group_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_group_text(buf.str());
}

std::string write_cayley(const FiniteGroup& g) {
  std::ostringstream os;
  const std::size_t n = g.order();
  os << "cayley " << n << '\n';
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      if (c) os << ' ';
      os << g.mul(static_cast<Element>(r), static_cast<Element>(c));
    }
    os << '\n';
  }
  if (g.has_labels())
    for (std::size_t i = 0; i < n; ++i) os << "label " << i << ' ' << g.label(static_cast<Element>(i)) << '\n';
  return os.str();
}

}  // namespace helpkit
