#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "doctest.h"
#include "lift.hpp"

using namespace rf7;

namespace {

Certificate tiny_valid() {
  Certificate c = *Certificate::create(2, 3, nullptr);
  for (u32 t = 0; t < 3; ++t) {
    for (u64 w = 0; w < 3; ++w) {
      c.set(t, w, 0, t == 0 ? 0 : 1);
      c.set(t, w, 1, t == 0 ? 1 : 0);
    }
  }
  return c;
}

Certificate tiny_identity_returns() {
  Certificate c = *Certificate::create(2, 3, nullptr);
  for (u32 t = 0; t < 3; ++t) {
    for (u64 w = 0; w < 3; ++w) {
      c.set(t, w, 0, 0);
      c.set(t, w, 1, 1);
    }
  }
  return c;
}

Certificate schedule_cert(u32 m) {
  std::string err;
  auto s = build_schedule(m, nullptr, &err);
  REQUIRE_MESSAGE(s.has_value(), err);
  auto c = certificate_from_schedule(*s, &err);
  REQUIRE_MESSAGE(c.has_value(), err);
  return *c;
}

// constant certificate: every color kappa always walks direction kappa;
// layers are translations (bijective), rows are Latin, but every return map
// is the identity, the canonical broken-returns specimen for n = 7
Certificate constant_cert(u32 m) {
  Certificate c = *Certificate::create(7, m, nullptr);
  for (u32 t = 0; t < m; ++t)
    for (u64 w = 0; w < c.states(); ++w)
      for (u32 k = 0; k < 7; ++k) c.set(t, w, k, static_cast<u8>(k));
  return c;
}

}  // namespace

TEST_CASE("lifted directions follow the layer chart") {
  Certificate c = schedule_cert(7);
  std::string err;
  auto a = lift_certificate(c, &err);
  REQUIRE_MESSAGE(a.has_value(), err);
  CHECK(a->vertices() == ipow(7, 7));
  // spot-check the defining identity on a sample of vertices
  for (u64 v = 0; v < a->vertices(); v += 10007) {
    ModVec x = vertex_point(7, 7, v);
    u32 t = sigma(x);
    auto w = iota(t, x);
    REQUIRE(w.has_value());
    for (u32 k = 0; k < 7; ++k) {
      CHECK(a->dir[v * 7 + k] == c.at(t, rf_index(*w), k));
    }
  }
}

TEST_CASE("tiny lift verifies as two 9-cycles") {
  Certificate c = tiny_valid();
  std::string err;
  auto a = lift_certificate(c, &err);
  REQUIRE(a.has_value());
  CycleReport rep = verify_decomposition(*a);
  CHECK(rep.pass);
  CHECK(rep.mode == "table");
  CHECK(rep.vertices == 9);
  REQUIRE(rep.lengths.size() == 2);
  CHECK(rep.lengths[0] == 9);
  CHECK(rep.lengths[1] == 9);
}

TEST_CASE("every vertex has in-degree one per color (tiny)") {
  Certificate c = tiny_valid();
  std::string err;
  auto a = lift_certificate(c, &err);
  REQUIRE(a.has_value());
  const u32 n = 2, m = 3;
  std::map<std::pair<u64, u32>, int> indeg;
  for (u64 v = 0; v < a->vertices(); ++v) {
    ModVec x = vertex_point(n, m, v);
    for (u32 k = 0; k < n; ++k) {
      ModVec y = x.add(ModVec::basis(n, m, a->dir[v * n + k]));
      ++indeg[{vertex_index(y), k}];
    }
  }
  for (u64 v = 0; v < a->vertices(); ++v)
    for (u32 k = 0; k < n; ++k) CHECK(indeg[{v, k}] == 1);
}

TEST_CASE("broken returns break the lift too") {
  Certificate c = tiny_identity_returns();
  std::string err;
  auto a = lift_certificate(c, &err);
  REQUIRE(a.has_value());
  CycleReport rep = verify_decomposition(*a);
  CHECK_FALSE(rep.pass);
  CHECK_FALSE(rep.covered);
  CHECK(rep.lengths[0] == 3);  // walk closes after one lap of e_0
}

TEST_CASE("schedule certificate verifies on the full torus, m=7") {
  Certificate c = schedule_cert(7);
  CycleReport rep = verify_lift(c, 1);
  CHECK(rep.pass);
  CHECK(rep.mode == "table");
  for (u64 len : rep.lengths) CHECK(len == ipow(7, 7));
}

TEST_CASE("streaming and table verification agree") {
  Certificate good = schedule_cert(7);
  CycleReport st = verify_lift_streaming(good, 1);
  CHECK(st.pass);
  CHECK(st.mode == "stream");
  for (u64 len : st.lengths) CHECK(len == ipow(7, 7));

  Certificate broken = tiny_identity_returns();
  std::string err;
  auto a = lift_certificate(broken, &err);
  REQUIRE(a.has_value());
  CycleReport t1 = verify_decomposition(*a, 1);
  CycleReport t2 = verify_lift_streaming(broken, 1);
  CHECK(t1.pass == t2.pass);
  CHECK(t1.lengths[0] == t2.lengths[0]);
}

TEST_CASE("threaded verification matches sequential") {
  Certificate c = schedule_cert(7);
  CycleReport seq = verify_lift(c, 1);
  CycleReport par = verify_lift(c, 4);
  CHECK(seq.pass == par.pass);
  CHECK(seq.lengths == par.lengths);
}

TEST_CASE("arc partition violations are caught") {
  Certificate c = tiny_valid();
  c.set(0, 0, 0, 1);  // row (0,0) now sends both colors in direction 1
  std::string err;
  auto a = lift_certificate(c, &err);
  REQUIRE(a.has_value());
  CycleReport rep = verify_decomposition(*a);
  CHECK_FALSE(rep.pass);
  CHECK_FALSE(rep.arc_partition);
  CycleReport st = verify_lift_streaming(c);
  CHECK_FALSE(st.pass);
  CHECK_FALSE(st.arc_partition);
}

TEST_CASE("cycle multiset of permutations") {
  CHECK(cycle_multiset({1, 2, 0, 4, 3}) == std::vector<u64>{2, 3});
  CHECK(cycle_multiset({0, 1, 2}) == std::vector<u64>{1, 1, 1});
}

TEST_CASE("structure cross-check on valid and broken certificates") {
  // valid m=7: every color gives one m^6 return cycle and one m^7 torus cycle
  Certificate good = schedule_cert(7);
  CrosscheckReport ok = return_structure_crosscheck(good);
  CHECK(ok.pass);
  for (u32 k = 0; k < 7; ++k) {
    CHECK(ok.return_multisets[k] == std::vector<u64>{ipow(7, 6)});
    CHECK(ok.cayley_multisets[k] == std::vector<u64>{ipow(7, 7)});
  }

  // constant m=3: returns are identities (729 fixed points), and the torus
  // shatters into 3-cycles; the scaled multisets still match exactly
  Certificate broken = constant_cert(3);
  CHECK(check_row_latin(broken).pass);
  CHECK_FALSE(check_primitive_return(broken).pass);
  CrosscheckReport rep = return_structure_crosscheck(broken);
  CHECK(rep.pass);
  for (u32 k = 0; k < 7; ++k) {
    CHECK(rep.return_multisets[k] == std::vector<u64>(729, 1));
    CHECK(rep.cayley_multisets[k] == std::vector<u64>(729, 3));
  }

  // C2 failure makes the cross-check refuse
  Certificate collision = tiny_valid();
  collision.set(0, 1, 0, 1);
  collision.set(0, 1, 1, 0);
  CrosscheckReport refuse = return_structure_crosscheck(collision);
  CHECK_FALSE(refuse.pass);
  CHECK(refuse.detail.find("bijectivity") != std::string::npos);
}

TEST_CASE("cycle export walks the real cycle") {
  Certificate c = tiny_valid();
  std::string path = "/tmp/rf7_test_cycle.txt";
  std::string err;
  REQUIRE_MESSAGE(export_cycles(c, 0, path, &err), err);

  std::ifstream f(path);
  std::string header;
  REQUIRE(std::getline(f, header));
  CHECK(header == "cycle n=2 m=3 color=0 len=9");
  std::vector<std::vector<u32>> verts;
  std::string line;
  while (std::getline(f, line)) {
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::vector<u32> x;
    u32 d;
    while (ss >> d) x.push_back(d);
    REQUIRE(x.size() == 2);
    verts.push_back(x);
  }
  REQUIRE(verts.size() == 9);
  CHECK(verts[0] == std::vector<u32>{0, 0});
  // all distinct
  std::set<std::vector<u32>> uniq(verts.begin(), verts.end());
  CHECK(uniq.size() == 9);
  // consecutive vertices differ by +1 in exactly one coordinate
  for (size_t i = 0; i < verts.size(); ++i) {
    const auto& a = verts[i];
    const auto& b = verts[(i + 1) % verts.size()];
    int moved = 0;
    for (u32 j = 0; j < 2; ++j) {
      if (b[j] == (a[j] + 1) % 3) ++moved;
      else CHECK(b[j] == a[j]);
    }
    CHECK(moved == 1);
  }
  std::remove(path.c_str());

  // a broken color refuses to export
  Certificate broken = tiny_identity_returns();
  CHECK_FALSE(export_cycles(broken, 0, path, &err));
  CHECK(err.find("not a full Hamilton cycle") != std::string::npos);
  std::remove(path.c_str());
}

TEST_CASE("direction string export") {
  Certificate c = tiny_valid();
  std::string path = "/tmp/rf7_test_dirs.txt";
  std::string err;
  REQUIRE(export_direction_string(c, 1, path, &err));
  std::ifstream f(path);
  std::string line;
  REQUIRE(std::getline(f, line));
  CHECK(line.size() == 9);
  for (char ch : line) CHECK((ch == '0' || ch == '1'));
  std::remove(path.c_str());
}

TEST_CASE("memory guard reroutes huge lifts to streaming") {
  std::string err;
  auto big = Certificate::create(7, 15, &err);
  REQUIRE(big.has_value());
  CHECK_FALSE(lift_certificate(*big, &err).has_value());
  CHECK(err.find("streaming") != std::string::npos);
}
