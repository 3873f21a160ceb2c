#include <cstdio>
#include <fstream>
#include <random>

#include "certificate.hpp"
#include "doctest.h"
#include "lift.hpp"

using namespace rf7;

namespace {

std::string tmp_path(const char* name) {
  return std::string("/tmp/rf7_test_") + name;
}

// n=2, m=3: the smallest honest playground. States are w in {0,1,2} with
// direction 0 meaning w+1 and direction 1 meaning stay. Rows must use both
// directions (C1), so a layer is described by which color advances.
Certificate tiny(u32 m = 3) {
  Certificate c = *Certificate::create(2, m, nullptr);
  return c;
}

// color 0 advances in layer 0 only; color 1 advances in layers 1..m-1;
// R_0 = +1 and R_1 = +(m-1), both single cycles
Certificate tiny_valid() {
  Certificate c = tiny();
  for (u32 t = 0; t < 3; ++t) {
    for (u64 w = 0; w < 3; ++w) {
      c.set(t, w, 0, t == 0 ? 0 : 1);
      c.set(t, w, 1, t == 0 ? 1 : 0);
    }
  }
  return c;
}

// all layers: color 0 advances everywhere; R_0 = +3 = identity
Certificate tiny_identity_returns() {
  Certificate c = tiny();
  for (u32 t = 0; t < 3; ++t) {
    for (u64 w = 0; w < 3; ++w) {
      c.set(t, w, 0, 0);
      c.set(t, w, 1, 1);
    }
  }
  return c;
}

// rows stay Latin but layer 0 of color 0 maps both 0 and 1 to state 1
Certificate tiny_collision() {
  Certificate c = tiny_valid();
  c.set(0, 1, 0, 1);  // 1 -> 1 while 0 -> 1 as well
  c.set(0, 1, 1, 0);
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

}  // namespace

TEST_CASE("create guards dimensions") {
  std::string err;
  CHECK_FALSE(Certificate::create(1, 3, &err).has_value());
  CHECK_FALSE(Certificate::create(9, 3, &err).has_value());
  CHECK_FALSE(Certificate::create(7, 101, &err).has_value());
  CHECK_FALSE(Certificate::create(7, 25, &err).has_value());  // 3 GiB guard
  CHECK(err.find("MiB") != std::string::npos);
  CHECK(Certificate::create(7, 15, &err).has_value());
  auto c = Certificate::create(2, 3, &err);
  REQUIRE(c.has_value());
  CHECK(c->states() == 3);
  CHECK(c->d.size() == 3 * 3 * 2);
}

TEST_CASE("tiny certificates behave as designed") {
  Certificate good = tiny_valid();
  CHECK(check_row_latin(good).pass);
  CHECK(check_layer_bijective(good).pass);
  CheckReport c3 = check_primitive_return(good);
  CHECK(c3.pass);
  REQUIRE(c3.cycle_lengths.size() == 2);
  CHECK(c3.cycle_lengths[0] == 3);
  CHECK(c3.cycle_lengths[1] == 3);

  Certificate identity = tiny_identity_returns();
  CHECK(check_row_latin(identity).pass);
  CHECK(check_layer_bijective(identity).pass);
  CheckReport bad3 = check_primitive_return(identity);
  CHECK_FALSE(bad3.pass);
  CHECK(bad3.cycle_lengths[0] == 1);
  CHECK(bad3.detail.find("length 1") != std::string::npos);

  Certificate collision = tiny_collision();
  CHECK(check_row_latin(collision).pass);
  CheckReport bad2 = check_layer_bijective(collision);
  CHECK_FALSE(bad2.pass);
  CHECK(bad2.detail.find("both map to") != std::string::npos);
  // C3 refuses to run on a non-bijective certificate
  CheckReport refused = check_primitive_return(collision);
  CHECK_FALSE(refused.pass);
  CHECK(refused.detail.find("not run") != std::string::npos);
}

TEST_CASE("row latin violations are located") {
  Certificate c = tiny_valid();
  c.set(1, 2, 0, 0);  // row (1,2) now uses direction 0 twice
  CheckReport rep = check_row_latin(c);
  CHECK_FALSE(rep.pass);
  CHECK(rep.t == 1);
  CHECK(rep.w == 2);
}

TEST_CASE("schedule certificate m=7 passes all conditions") {
  Certificate c = schedule_cert(7);
  CHECK(c.n == 7);
  CHECK(c.m == 7);
  CHECK(check_row_latin(c).pass);
  CHECK(check_layer_bijective(c).pass);
  CheckReport c3 = check_primitive_return(c);
  CHECK(c3.pass);
  for (u64 len : c3.cycle_lengths) CHECK(len == ipow(7, 6));
}

TEST_CASE("schedule certificate honors nonzero thresholds") {
  std::vector<u32> thr;
  for (u32 t = 0; t < 9; ++t) thr.push_back((3 * t + 1) % 9);
  std::string err;
  auto s = build_schedule(9, &thr, &err);
  REQUIRE(s.has_value());
  auto c = certificate_from_schedule(*s, &err);
  REQUIRE_MESSAGE(c.has_value(), err);
  CHECK(check_row_latin(*c).pass);
  CHECK(check_layer_bijective(*c).pass);
  CHECK(check_primitive_return(*c).pass);
}

TEST_CASE("return map equals composed layer permutations") {
  Certificate c = schedule_cert(7);
  for (u32 k : {0u, 3u}) {
    std::vector<u32> expect(c.states());
    for (u64 w = 0; w < c.states(); ++w) expect[w] = static_cast<u32>(w);
    std::vector<u32> layer;
    for (u32 t = 0; t < c.m; ++t) {
      layer_permutation(c, t, k, layer);
      for (u64 w = 0; w < c.states(); ++w) expect[w] = layer[expect[w]];
    }
    CHECK(return_map(c, k) == expect);
  }
}

TEST_CASE("rotated layer products are conjugate to the return map") {
  // starting the composition at layer t0 gives P_{<t0} R P_{<t0}^{-1}, so
  // every rotation must share the return map's cycle structure; this is the
  // identity behind reading the whole decomposition off one return map
  Certificate c = schedule_cert(7);
  const u32 k = 2;
  u64 states = c.states();
  std::vector<std::vector<u32>> layers(c.m);
  for (u32 t = 0; t < c.m; ++t) layer_permutation(c, t, k, layers[t]);
  std::vector<u64> reference;
  for (u32 t0 = 0; t0 < c.m; ++t0) {
    std::vector<u32> prod(states);
    for (u64 w = 0; w < states; ++w) prod[w] = static_cast<u32>(w);
    for (u32 j = 0; j < c.m; ++j) {
      const auto& layer = layers[(t0 + j) % c.m];
      for (u64 w = 0; w < states; ++w) prod[w] = layer[prod[w]];
    }
    std::vector<u64> ms = cycle_multiset(prod);
    if (t0 == 0) {
      reference = ms;
    } else {
      CHECK(ms == reference);
    }
  }
  CHECK(reference == std::vector<u64>{states});
}

TEST_CASE("text format round trip") {
  for (const Certificate& c : {tiny_valid(), schedule_cert(7)}) {
    std::string path = tmp_path("roundtrip.rft");
    std::string err;
    REQUIRE_MESSAGE(write_certificate_text(c, path, &err), err);
    auto back = read_certificate(path, &err);
    REQUIRE_MESSAGE(back.has_value(), err);
    CHECK(back->n == c.n);
    CHECK(back->m == c.m);
    CHECK(back->d == c.d);
    std::remove(path.c_str());
  }
}

TEST_CASE("binary format round trip") {
  for (const Certificate& c : {tiny_valid(), schedule_cert(9)}) {
    std::string path = tmp_path("roundtrip.rfc");
    std::string err;
    REQUIRE_MESSAGE(write_certificate_binary(c, path, &err), err);
    auto back = read_certificate(path, &err);
    REQUIRE_MESSAGE(back.has_value(), err);
    CHECK(back->n == c.n);
    CHECK(back->m == c.m);
    CHECK(back->d == c.d);
    std::remove(path.c_str());
  }
}

TEST_CASE("binary reader rejects damage") {
  Certificate c = tiny_valid();
  std::string path = tmp_path("damage.rfc");
  std::string err;
  REQUIRE(write_certificate_binary(c, path, &err));

  auto slurp = [&]() {
    std::ifstream f(path, std::ios::binary);
    return std::string((std::istreambuf_iterator<char>(f)),
                       std::istreambuf_iterator<char>());
  };
  auto spit = [&](const std::string& bytes) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    f.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  };
  std::string original = slurp();

  // truncated table
  spit(original.substr(0, original.size() - 1));
  CHECK_FALSE(read_certificate(path, &err).has_value());
  CHECK(err.find("direction bytes") != std::string::npos);

  // trailing garbage
  spit(original + "x");
  CHECK_FALSE(read_certificate(path, &err).has_value());
  CHECK(err.find("trailing") != std::string::npos);

  // direction byte out of range
  {
    std::string bad = original;
    bad[16] = 5;
    spit(bad);
    CHECK_FALSE(read_certificate(path, &err).has_value());
    CHECK(err.find("out of range") != std::string::npos);
  }

  // absurd header dimensions
  {
    std::string bad = original;
    bad[4] = 42;
    spit(bad);
    CHECK_FALSE(read_certificate(path, &err).has_value());
    CHECK(err.find("bad header") != std::string::npos);
  }
  std::remove(path.c_str());
}

TEST_CASE("text reader rejects damage with line numbers") {
  Certificate c = tiny_valid();
  std::string path = tmp_path("damage.rft");
  std::string err;
  REQUIRE(write_certificate_text(c, path, &err));

  auto mutate = [&](auto fn) {
    std::ifstream f(path);
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(f, line)) lines.push_back(line);
    f.close();
    fn(lines);
    std::ofstream out(path, std::ios::trunc);
    for (const auto& l : lines) out << l << "\n";
  };

  // bad digit value
  mutate([](std::vector<std::string>& l) { l[4] = "0 9"; });
  CHECK_FALSE(read_certificate(path, &err).has_value());
  CHECK(err.find(":5:") != std::string::npos);
  CHECK(err.find("out of range") != std::string::npos);

  REQUIRE(write_certificate_text(c, path, &err));
  // trailing characters on a row
  mutate([](std::vector<std::string>& l) { l[4] += " 1"; });
  CHECK_FALSE(read_certificate(path, &err).has_value());
  CHECK(err.find("trailing") != std::string::npos);

  REQUIRE(write_certificate_text(c, path, &err));
  // missing layer header
  mutate([](std::vector<std::string>& l) { l[3] = "layer 2"; });
  CHECK_FALSE(read_certificate(path, &err).has_value());
  CHECK(err.find("expected 'layer 0'") != std::string::npos);

  REQUIRE(write_certificate_text(c, path, &err));
  // truncated rows
  mutate([](std::vector<std::string>& l) { l.resize(5); });
  CHECK_FALSE(read_certificate(path, &err).has_value());
  CHECK(err.find("truncated") != std::string::npos);

  REQUIRE(write_certificate_text(c, path, &err));
  // wrong banner
  mutate([](std::vector<std::string>& l) { l[0] = "rootflat-certificate v2"; });
  CHECK_FALSE(read_certificate(path, &err).has_value());
  CHECK(err.find("header") != std::string::npos);

  std::remove(path.c_str());
  CHECK_FALSE(read_certificate(path, &err).has_value());
  CHECK(err.find("cannot open") != std::string::npos);
}

TEST_CASE("single corrupted entry always breaks row latinness") {
  // a certificate row holds a permutation of the 7 directions, so changing
  // one byte collides with the color that already used that direction; this
  // is why the checker rejects pointwise corruption at C1
  Certificate c = schedule_cert(7);
  std::mt19937 rng(5);
  for (int it = 0; it < 25; ++it) {
    u64 pos = rng() % c.d.size();
    u8 old = c.d[pos];
    c.d[pos] = static_cast<u8>((old + 1 + rng() % 6) % 7);
    CHECK_FALSE(check_row_latin(c).pass);
    c.d[pos] = old;
  }
  CHECK(check_row_latin(c).pass);
}
