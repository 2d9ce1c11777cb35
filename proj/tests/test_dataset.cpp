#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <catch_amalgamated.hpp>

#include "vropt/dataset.hpp"

using namespace vropt;

TEST_CASE("parse_libsvm reads the basic format") {
  std::istringstream in("+1 1:0.5 3:1.0\n-1 2:2.0\n");
  const dataset ds = parse_libsvm(in);
  REQUIRE(ds.n() == 2);
  REQUIRE(ds.dim == 3);
  REQUIRE(ds.labels == std::vector<double>{1.0, -1.0});
  REQUIRE(ds.rows[0].indices == std::vector<int>{0, 2});
  REQUIRE(ds.rows[0].values == std::vector<double>{0.5, 1.0});
  REQUIRE(ds.rows[1].indices == std::vector<int>{1});
  REQUIRE(ds.rows[1].values == std::vector<double>{2.0});
  REQUIRE_NOTHROW(validate_dataset(ds));
}

TEST_CASE("parse_libsvm skips blank lines and comments") {
  std::istringstream in("\n+1 1:1.0 # tail comment\n\n-1 2:1.5\n");
  const dataset ds = parse_libsvm(in);
  REQUIRE(ds.n() == 2);
  REQUIRE(ds.dim == 2);
}

TEST_CASE("parse_libsvm rejects an empty stream") {
  std::istringstream in("");
  REQUIRE_THROWS_WITH(parse_libsvm(in), Catch::Matchers::ContainsSubstring(
                                            "empty dataset"));
}

TEST_CASE("parse_libsvm names the offending line") {
  SECTION("malformed feature token") {
    std::istringstream in("+1 1:1.0\n-1 abc\n");
    REQUIRE_THROWS_WITH(parse_libsvm(in),
                        Catch::Matchers::ContainsSubstring("line 2"));
  }
  SECTION("non-increasing indices") {
    std::istringstream in("+1 2:1.0 2:3.0\n");
    REQUIRE_THROWS_WITH(
        parse_libsvm(in),
        Catch::Matchers::ContainsSubstring("strictly increasing"));
  }
  SECTION("zero index") {
    std::istringstream in("+1 0:1.0\n");
    REQUIRE_THROWS_WITH(parse_libsvm(in),
                        Catch::Matchers::ContainsSubstring(">= 1"));
  }
  SECTION("non-numeric value") {
    std::istringstream in("+1 1:zzz\n");
    REQUIRE_THROWS_AS(parse_libsvm(in), parse_error);
  }
  SECTION("non-numeric label") {
    std::istringstream in("spam 1:1.0\n");
    REQUIRE_THROWS_WITH(parse_libsvm(in),
                        Catch::Matchers::ContainsSubstring("label"));
  }
}

TEST_CASE("min_dim can enlarge but never shrink the dimension") {
  std::istringstream in1("+1 1:1.0\n-1 2:1.0\n");
  REQUIRE(parse_libsvm(in1, 10).dim == 10);
  std::istringstream in2("+1 1:1.0\n-1 5:1.0\n");
  REQUIRE(parse_libsvm(in2, 2).dim == 5);
}

TEST_CASE("normalize_labels maps the larger raw value to +1") {
  REQUIRE(normalize_labels({0, 1, 0}) == std::vector<double>{-1, 1, -1});
  REQUIRE(normalize_labels({-1, 1}) == std::vector<double>{-1, 1});
  REQUIRE(normalize_labels({1, 2, 2, 1}) == std::vector<double>{-1, 1, 1, -1});
  REQUIRE_THROWS_AS(normalize_labels({1, 1, 1}), parse_error);
  REQUIRE_THROWS_AS(normalize_labels({0, 1, 2}), parse_error);
}

TEST_CASE("sparse_dot matches hand arithmetic") {
  sparse_row row{{0, 2}, {2.0, 3.0}};
  vec x(3);
  x << 1, 5, -1;
  REQUIRE(sparse_dot(row, x) == -1.0);

  sparse_row empty;
  REQUIRE(sparse_dot(empty, x) == 0.0);

  sparse_row r2{{1}, {1.0}};
  vec short_x(1);
  short_x << 0;
  REQUIRE_THROWS_AS(sparse_dot(r2, short_x), dimension_error);
}

TEST_CASE("sparse_dot equals the densified dot in ascending index order") {
  rng r(7);
  for (int trial = 0; trial < 50; ++trial) {
    const int d = 1 + static_cast<int>(r.uniform_index(30));
    sparse_row row;
    for (int j = 0; j < d; ++j) {
      if (r.uniform01() < 0.4) {
        row.indices.push_back(j);
        row.values.push_back(r.normal());
      }
    }
    vec x(d);
    for (int j = 0; j < d; ++j) x[j] = r.normal();

    vec dense = vec::Zero(d);
    for (std::size_t j = 0; j < row.nnz(); ++j)
      dense[row.indices[j]] = row.values[j];
    double reference = 0.0;
    for (int j = 0; j < d; ++j) reference += dense[j] * x[j];

    REQUIRE(sparse_dot(row, x) == reference);
  }
}

TEST_CASE("parse -> serialize -> parse round trip is exact") {
  const dataset ds = synthetic_logistic_dataset(60, 17, 42);
  std::ostringstream out;
  serialize_libsvm(ds, out);
  std::istringstream back(out.str());
  const dataset ds2 = parse_libsvm(back);

  REQUIRE(ds2.n() == ds.n());
  REQUIRE(ds2.dim == ds.dim);
  REQUIRE(ds2.labels == ds.labels);
  for (std::size_t i = 0; i < ds.n(); ++i) {
    REQUIRE(ds2.rows[i].indices == ds.rows[i].indices);
    REQUIRE(ds2.rows[i].values == ds.rows[i].values);
  }

  // and the serialized text itself is a fixed point
  std::ostringstream out2;
  serialize_libsvm(ds2, out2);
  REQUIRE(out.str() == out2.str());
}

TEST_CASE("synthetic dataset is deterministic and valid") {
  const dataset a = synthetic_logistic_dataset(100, 20, 5);
  const dataset b = synthetic_logistic_dataset(100, 20, 5);
  REQUIRE(a.labels == b.labels);
  REQUIRE(a.rows[57].values == b.rows[57].values);
  REQUIRE_NOTHROW(validate_dataset(a));

  const dataset c = synthetic_logistic_dataset(100, 20, 6);
  bool somewhere_different = false;
  for (std::size_t i = 0; i < a.n() && !somewhere_different; ++i)
    somewhere_different = a.rows[i].values != c.rows[i].values;
  REQUIRE(somewhere_different);
}

TEST_CASE("validate_dataset catches broken invariants") {
  dataset ds;
  ds.dim = 2;
  ds.rows.push_back({{0, 1}, {1.0, 2.0}});
  ds.labels.push_back(1.0);
  REQUIRE_NOTHROW(validate_dataset(ds));

  SECTION("label outside {-1,+1}") {
    ds.labels[0] = 0.5;
    REQUIRE_THROWS_AS(validate_dataset(ds), parse_error);
  }
  SECTION("index beyond dim") {
    ds.rows[0].indices[1] = 2;
    REQUIRE_THROWS_AS(validate_dataset(ds), parse_error);
  }
  SECTION("non-finite value") {
    ds.rows[0].values[0] = std::numeric_limits<double>::infinity();
    REQUIRE_THROWS_AS(validate_dataset(ds), parse_error);
  }
  SECTION("length mismatch") {
    ds.rows[0].values.pop_back();
    REQUIRE_THROWS_AS(validate_dataset(ds), parse_error);
  }
}

// The reference counts for the a3a file were produced by an independent
// one-pass scan (tools/scripts/libsvm_scan.py). The test engages only when
// the file is available locally.
TEST_CASE("a3a dimensions match the recorded scan") {
  std::filesystem::path path = "a3a";
  if (!std::filesystem::exists(path)) {
    if (const char* dir = std::getenv("VROPT_DATA_DIR"))
      path = std::filesystem::path(dir) / "a3a";
  }
  if (!std::filesystem::exists(path)) {
    SUCCEED("a3a not present; skipping");
    return;
  }
  std::ifstream f(path);
  const dataset ds = parse_libsvm(f);
  REQUIRE(ds.n() == 3185);
  REQUIRE(ds.dim == 122);
  for (double label : ds.labels) REQUIRE((label == 1.0 || label == -1.0));
}
