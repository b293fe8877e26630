#include <gtest/gtest.h>

#include <set>

#include "corpus_cache.hpp"
#include "helpkit/constructions.hpp"
#include "helpkit/permutation.hpp"
#include "helpkit/structure.hpp"

using namespace helpkit;
using testing_corpus::corpus64;
using testing_corpus::entry;

TEST(Semidirect, OrderSixMatchesPermutationClosure) {
  const FiniteGroup c2 = cyclic_group(2);
  const auto r = semidirect({3, c2, action_from_generators(c2, 3, {-1})});
  EXPECT_EQ(r.group.order(), 6u);
  EXPECT_EQ(r.group.classes().size(), 3u);
  const FiniteGroup s3 = closure({Permutation::parse("(1,2,3)"), Permutation::parse("(1,2)")});
  EXPECT_EQ(fingerprint(r.group), fingerprint(s3));
  EXPECT_EQ(r.a_subgroup.order(), 3u);
  EXPECT_TRUE(is_normal(r.group, r.a_subgroup));
}

TEST(Semidirect, TrivialComplementIsCyclic) {
  const auto r = semidirect({5, FiniteGroup(), {1}});
  EXPECT_EQ(r.group.order(), 5u);
  EXPECT_TRUE(is_cyclic(r.group, r.group.whole()));
}

TEST(Semidirect, QuaternionOnC8GivesHamiltonianQuotient) {
  const FiniteGroup q8 = quaternion_group();
  const auto r = semidirect({8, q8, action_from_generators(q8, 8, {3, 5})});
  EXPECT_EQ(r.group.order(), 64u);
  EXPECT_TRUE(is_hamiltonian(quotient(r.group, r.a_subgroup).target));
}

TEST(Semidirect, Deterministic) {
  const FiniteGroup c4 = cyclic_group(4);
  const SemidirectSpec spec{5, c4, action_from_generators(c4, 5, {2})};
  const auto a = semidirect(spec);
  const auto b = semidirect(spec);
  EXPECT_TRUE(std::equal(a.group.table().begin(), a.group.table().end(), b.group.table().begin()));
}

TEST(Semidirect, RejectsBadActions) {
  const FiniteGroup c2 = cyclic_group(2);
  EXPECT_THROW(action_from_generators(c2, 5, {2}), InvalidInput);  // 2 has order 4 mod 5
  EXPECT_THROW(action_from_generators(c2, 6, {2}), InvalidInput);  // not a unit
  EXPECT_THROW(action_from_generators(c2, 5, {}), InvalidInput);
  EXPECT_THROW(semidirect({5, c2, {1}}), InvalidInput);
  const FiniteGroup c64 = cyclic_group(64);
  EXPECT_THROW(semidirect({65, c64, std::vector<std::int64_t>(64, 1)}), CapExceeded);
}

TEST(Hamiltonian, Examples) {
  EXPECT_EQ(hamiltonian({}, 0).order(), 8u);
  EXPECT_TRUE(is_hamiltonian(hamiltonian({}, 0)));
  EXPECT_EQ(hamiltonian({3}, 0).order(), 24u);
  EXPECT_TRUE(is_hamiltonian(hamiltonian({3}, 0)));
  EXPECT_EQ(hamiltonian({}, 1).order(), 16u);
  EXPECT_TRUE(is_hamiltonian(hamiltonian({}, 1)));
  EXPECT_THROW(hamiltonian({4}, 0), InvalidInput);
  EXPECT_FALSE(is_hamiltonian(cyclic_group(4)));
}

TEST(Corpus, Size) {
  const auto& c = corpus64();
  EXPECT_GE(c.size(), 25u);
  std::set<std::string> ids;
  for (const auto& e : c) EXPECT_TRUE(ids.insert(e.id).second) << e.id;
  for (const char* id : {"C3:C2(2)", "Q8", "C3:C4(2)", "C5:C4(2)", "C3:Q8(1,1)", "C8:Q8(3,5)", "S4"})
    EXPECT_NO_THROW(entry(id)) << id;
}

TEST(Corpus, EveryEntrySatisfiesItsTag) {
  for (const auto& e : corpus64()) {
    const auto& g = e.group;
    ASSERT_TRUE(is_cyclic(g, e.witness)) << e.id;
    ASSERT_TRUE(is_normal(g, e.witness)) << e.id;
    EXPECT_TRUE(e.witness.contains(e.witness_generator)) << e.id;
    EXPECT_EQ(g.element_order(e.witness_generator), e.witness.order()) << e.id;
    EXPECT_TRUE(in_family(g, e.witness, e.family)) << e.id;
    if (e.family != Family::Control) {
      // G/A nilpotent implies (G', A) = 1
      const Subgroup d = derived_subgroup(g);
      for (Element x : d.elements())
        for (Element y : e.witness.elements()) EXPECT_EQ(g.comm(x, y), g.identity()) << e.id;
    }
  }
}

TEST(Corpus, HasEveryFamily) {
  std::set<Family> seen;
  for (const auto& e : corpus64()) seen.insert(e.family);
  EXPECT_EQ(seen.size(), 4u);
  std::size_t failing_controls = 0;
  for (const auto& e : corpus64())
    if (e.family == Family::Control && !is_nilpotent(quotient(e.group, e.witness).target)) ++failing_controls;
  EXPECT_GT(failing_controls, 0u);
}

TEST(Corpus, SmallExamples) {
  const auto c8 = build_corpus(8);
  auto find = [&](const std::string& id) -> const CorpusEntry* {
    for (const auto& e : c8)
      if (e.id == id) return &e;
    return nullptr;
  };
  const auto* s3 = find("C3:C2(2)");
  ASSERT_NE(s3, nullptr);
  EXPECT_EQ(s3->family, Family::CyclicByP);
  const auto* q8 = find("Q8");
  ASSERT_NE(q8, nullptr);
  EXPECT_EQ(q8->family, Family::CyclicByHamiltonian);
  // Q8 is itself Hamiltonian; its quotients by C4 or Z(Q8) are abelian
  EXPECT_EQ(q8->witness.order(), 1u);
  const auto c1 = build_corpus(1);
  ASSERT_EQ(c1.size(), 1u);
  EXPECT_EQ(c1[0].family, Family::Control);
}

TEST(Corpus, CyclicByQuaternionSweep) {
  // every hom Q8 -> (Z/3)^x: the kernels of order 8, 4 (three of them) collapse to two isomorphism types
  std::size_t count = 0;
  for (const auto& e : corpus64())
    if (e.id.rfind("C3:Q8(", 0) == 0) ++count;
  EXPECT_GE(count, 2u);
}

TEST(Manifest, RoundTrip) {
  std::vector<CorpusEntry> some;
  for (const auto& e : corpus64())
    if (e.group.order() <= 24) some.push_back(e);
  const auto m = manifest_json(some, 24);
  EXPECT_EQ(m["schema_version"], kManifestSchemaVersion);
  const auto back = load_manifest(nlohmann::json::parse(m.dump()));
  ASSERT_EQ(back.size(), some.size());
  for (std::size_t i = 0; i < back.size(); ++i) {
    EXPECT_EQ(back[i].id, some[i].id);
    EXPECT_EQ(back[i].family, some[i].family);
    EXPECT_TRUE(back[i].witness == some[i].witness) << some[i].id;
    EXPECT_EQ(fingerprint(back[i].group), fingerprint(some[i].group));
  }
  EXPECT_EQ(manifest_json(back, 24).dump(), m.dump());
}

TEST(Manifest, Errors) {
  EXPECT_THROW(load_manifest(nlohmann::json::array()), InvalidInput);
  EXPECT_THROW(load_manifest({{"schema_version", 99}}), InvalidInput);
  EXPECT_TRUE(load_manifest({{"schema_version", kManifestSchemaVersion}, {"entries", nlohmann::json::array()}}).empty());
  auto m = manifest_json({entry("C3:C4(2)")}, 12);
  auto bad = m;
  bad["entries"][0]["order"] = 13;
  EXPECT_THROW(load_manifest(bad), InvalidInput);
  bad = m;
  bad["entries"][0]["family"] = "cyclic-by-hamiltonian";
  EXPECT_THROW(load_manifest(bad), InvalidInput);
  bad = m;
  bad["entries"][0].erase("recipe");
  EXPECT_THROW(load_manifest(bad), InvalidInput);
}

TEST(Recipe, KindsAndErrors) {
  EXPECT_EQ(build_from_recipe({{"kind", "cyclic"}, {"n", 7}}).group.order(), 7u);
  EXPECT_EQ(build_from_recipe({{"kind", "quaternion"}}).group.order(), 8u);
  EXPECT_EQ(build_from_recipe({{"kind", "perm"}, {"generators", {"(1,2,3,4)", "(1,2)"}}}).group.order(), 24u);
  const nlohmann::json prod = {{"kind", "direct_product"},
                               {"factors", {{{"kind", "cyclic"}, {"n", 2}}, {{"kind", "cyclic"}, {"n", 3}}}}};
  EXPECT_EQ(build_from_recipe(prod).group.order(), 6u);
  const nlohmann::json semi = {{"kind", "semidirect"}, {"n", 3}, {"complement", {{"kind", "cyclic"}, {"n", 4}}}, {"images", {2}}};
  const auto built = build_from_recipe(semi);
  EXPECT_EQ(built.group.order(), 12u);
  ASSERT_TRUE(built.a.has_value());
  EXPECT_EQ(built.group.element_order(*built.a), 3u);
  EXPECT_THROW(build_from_recipe({{"kind", "nonsense"}}), InvalidInput);
  EXPECT_THROW(build_from_recipe(nlohmann::json::array()), InvalidInput);
  EXPECT_THROW(build_from_recipe({{"kind", "cyclic"}}), InvalidInput);
  EXPECT_THROW(build_from_recipe({{"kind", "hamiltonian"}, {"odd", {2}}, {"two_rank", 0}}), InvalidInput);
}

TEST(Family, NamesRoundTrip) {
  for (auto f : {Family::CyclicByP, Family::CyclicByAbelian, Family::CyclicByHamiltonian, Family::Control})
    EXPECT_EQ(parse_family(family_name(f)), f);
  EXPECT_THROW(parse_family("cyclic-by-everything"), InvalidInput);
}
