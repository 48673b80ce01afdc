#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "sac/classify/features.hpp"
#include "sac/rng.hpp"

using namespace sac::classify;

TEST_CASE("tokenize lowercases, splits and drops short tokens") {
  CHECK(tokenize("The system SHALL encrypt data.") ==
        std::vector<std::string>{"the", "system", "shall", "encrypt", "data"});
  CHECK(tokenize("A/B I/O").empty());
  CHECK(tokenize("").empty());
  CHECK(tokenize("x1 x1") == std::vector<std::string>{"x1", "x1"});
  CHECK(tokenize("TLS1.3 handshake") ==
        std::vector<std::string>{"tls1", "handshake"});
  CHECK(tokenize("key-renewal") == std::vector<std::string>{"key", "renewal"});
}

TEST_CASE("fit_feature_space computes smoothed idf on the two-doc corpus") {
  FeatureSpace fs = fit_feature_space({"encrypt data", "log data"}, 10);
  REQUIRE(fs.vocab == std::vector<std::string>{"data", "encrypt", "log"});
  CHECK(fs.idf[0] == doctest::Approx(1.0));
  CHECK(fs.idf[1] == doctest::Approx(std::log(3.0 / 2.0) + 1.0));
  CHECK(fs.idf[1] == doctest::Approx(1.4055).epsilon(1e-3));
  CHECK(fs.idf[2] == doctest::Approx(1.4055).epsilon(1e-3));
}

TEST_CASE("vocabulary is capped by document frequency") {
  FeatureSpace fs = fit_feature_space({"encrypt data", "log data"}, 1);
  CHECK(fs.vocab == std::vector<std::string>{"data"});
}

TEST_CASE("single-document corpus") {
  FeatureSpace fs = fit_feature_space({"x1 x1"}, 10);
  REQUIRE(fs.vocab == std::vector<std::string>{"x1"});
  CHECK(fs.idf[0] == doctest::Approx(1.0));  // ln(2/2) + 1
}

TEST_CASE("vectorize weights counts by idf and L2-normalizes") {
  FeatureSpace fs = fit_feature_space({"encrypt data", "log data"}, 10);
  auto v = vectorize(fs, "encrypt data");
  REQUIRE(v.size() == 3);
  CHECK(v[0] == doctest::Approx(0.5799).epsilon(1e-3));
  CHECK(v[1] == doctest::Approx(0.8147).epsilon(1e-3));
  CHECK(v[2] == doctest::Approx(0.0));
}

TEST_CASE("out-of-vocabulary text maps to the zero vector") {
  FeatureSpace fs = fit_feature_space({"encrypt data", "log data"}, 10);
  auto v = vectorize(fs, "zzz");
  for (double x : v) CHECK(x == 0.0);
}

TEST_CASE("property: vector norm is zero or one") {
  FeatureSpace fs = fit_feature_space(
      {"encrypt data now", "log data later", "verify keys", "rotate keys daily"},
      50);
  sac::SplitMix64 rng(3);
  static const char* words[] = {"encrypt", "data", "log",   "verify",
                                "keys",    "now",  "later", "zzz"};
  for (int iter = 0; iter < 200; ++iter) {
    std::string text;
    const size_t n = rng.next_index(6);
    for (size_t i = 0; i < n; ++i) {
      if (i) text += " ";
      text += words[rng.next_index(8)];
    }
    auto v = vectorize(fs, text);
    double norm = 0;
    for (double x : v) norm += x * x;
    norm = std::sqrt(norm);
    CHECK((norm == 0.0 || std::abs(norm - 1.0) <= 1e-9));
  }
}

TEST_CASE("degenerate inputs are rejected") {
  CHECK_THROWS_AS(fit_feature_space({}, 10), std::invalid_argument);
  CHECK_THROWS_AS(fit_feature_space({"a b"}, 0), std::invalid_argument);
}
