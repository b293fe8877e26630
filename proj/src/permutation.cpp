#include "helpkit/permutation.hpp"

#include <algorithm>
#include <cctype>
#include <map>

namespace helpkit {

Permutation::Permutation(std::vector<std::uint32_t> image) : image_(std::move(image)) {
  std::vector<char> hit(image_.size(), 0);
  for (auto p : image_) {
    if (p >= image_.size() || hit[p]) throw GroupError("not a bijection");
    hit[p] = 1;
  }
  while (!image_.empty() && image_.back() == image_.size() - 1) image_.pop_back();
}

Permutation Permutation::parse(std::string_view text) {
  std::vector<std::vector<std::uint32_t>> cycles;
  std::size_t i = 0;
  auto skip_space = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  skip_space();
  while (i < text.size()) {
    if (text[i] != '(') throw GroupError("expected '(' in permutation \"" + std::string(text) + "\"");
    ++i;
    std::vector<std::uint32_t> cycle;
    for (;;) {
      skip_space();
      if (i < text.size() && text[i] == ',') {
        ++i;
        continue;
      }
      if (i < text.size() && text[i] == ')') {
        ++i;
        break;
      }
      if (i >= text.size() || !std::isdigit(static_cast<unsigned char>(text[i])))
        throw GroupError("malformed cycle in permutation \"" + std::string(text) + "\"");
      std::uint64_t v = 0;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        v = v * 10 + static_cast<std::uint64_t>(text[i] - '0');
        if (v > 1'000'000) throw GroupError("point too large in permutation");
        ++i;
      }
      if (v == 0) throw GroupError("points are numbered from 1");
      cycle.push_back(static_cast<std::uint32_t>(v - 1));
    }
    cycles.push_back(std::move(cycle));
    skip_space();
  }
  std::uint32_t degree = 0;
  for (const auto& c : cycles)
    for (auto p : c) degree = std::max(degree, p + 1);
  std::vector<std::uint32_t> image(degree);
  for (std::uint32_t p = 0; p < degree; ++p) image[p] = p;
  std::vector<char> used(degree, 0);
  for (const auto& c : cycles) {
    for (std::size_t k = 0; k < c.size(); ++k) {
      if (used[c[k]]) throw GroupError("point repeated in permutation \"" + std::string(text) + "\"");
      used[c[k]] = 1;
      image[c[k]] = c[(k + 1) % c.size()];
    }
  }
  return Permutation(std::move(image));
}

bool Permutation::is_identity() const noexcept { return image_.empty(); }

Permutation Permutation::padded(std::size_t degree) const {
  Permutation p;
  p.image_ = image_;
  for (auto k = static_cast<std::uint32_t>(p.image_.size()); k < degree; ++k) p.image_.push_back(k);
  return p;
}

Permutation Permutation::then(const Permutation& other) const {
  const std::size_t d = std::max(degree(), other.degree());
  std::vector<std::uint32_t> image(d);
  for (std::uint32_t p = 0; p < d; ++p) image[p] = other((*this)(p));
  return Permutation(std::move(image));
}

std::string Permutation::to_cycles() const {
  std::string out;
  std::vector<char> seen(image_.size(), 0);
  for (std::uint32_t p = 0; p < image_.size(); ++p) {
    if (seen[p] || image_[p] == p) continue;
    out += '(';
    std::uint32_t q = p;
    bool first = true;
    while (!seen[q]) {
      seen[q] = 1;
      if (!first) out += ',';
      out += std::to_string(q + 1);
      first = false;
      q = image_[q];
    }
    out += ')';
  }
  return out.empty() ? "()" : out;
}

FiniteGroup closure(const std::vector<Permutation>& generators, std::size_t cap) {
  std::vector<Permutation> gens;
  for (const auto& g : generators)
    if (!g.is_identity() && std::find(gens.begin(), gens.end(), g) == gens.end()) gens.push_back(g);

  std::vector<Permutation> elems{Permutation{}};
  std::map<Permutation, Element> index{{Permutation{}, 0}};
  std::vector<Element> parent{0};
  std::vector<std::size_t> via{0};
  // right[x * k + s] = x * gens[s]
  std::vector<Element> right;
  const std::size_t k = gens.size();
  for (std::size_t i = 0; i < elems.size(); ++i) {
    for (std::size_t s = 0; s < k; ++s) {
      Permutation y = elems[i].then(gens[s]);
      auto it = index.find(y);
      Element idx;
      if (it == index.end()) {
        if (elems.size() >= cap)
          throw CapExceeded("generated group exceeds order cap " + std::to_string(cap));
        idx = static_cast<Element>(elems.size());
        index.emplace(y, idx);
        elems.push_back(std::move(y));
        parent.push_back(static_cast<Element>(i));
        via.push_back(s);
      } else {
        idx = it->second;
      }
      right.push_back(idx);
    }
  }

  const std::size_t n = elems.size();
  std::vector<Element> table(n * n);
  for (std::size_t g = 0; g < n; ++g) table[g * n] = static_cast<Element>(g);
  for (std::size_t h = 1; h < n; ++h)
    for (std::size_t g = 0; g < n; ++g)
      table[g * n + h] = right[static_cast<std::size_t>(table[g * n + parent[h]]) * k + via[h]];

  std::vector<std::string> labels;
  labels.reserve(n);
  for (const auto& e : elems) labels.push_back(e.to_cycles());
  std::vector<Element> gen_idx;
  for (const auto& g : gens) gen_idx.push_back(index.at(g));
  return FiniteGroup::from_table(std::move(table), n, std::move(labels), std::move(gen_idx));
}

FiniteGroup closure(const FiniteGroup& ambient, std::span<const Element> generators) {
  return as_group(ambient, subgroup_closure(ambient, generators));
}

}  // namespace helpkit
