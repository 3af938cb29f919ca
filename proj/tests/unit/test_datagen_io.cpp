#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include <lassopath/datagen.hpp>
#include <lassopath/io.hpp>

using namespace lassopath;

namespace {

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / name;
}

}  // namespace

TEST_CASE("generation is deterministic in the seed") {
  const auto a = generate_instance(4, 6, 2, 0.3, 123);
  const auto b = generate_instance(4, 6, 2, 0.3, 123);
  CHECK(matrix_csv(a.design.matrix()) == matrix_csv(b.design.matrix()));
  CHECK(vector_csv(a.response.values()) == vector_csv(b.response.values()));
  CHECK(truth_json(a) == truth_json(b));

  const auto c = generate_instance(4, 6, 2, 0.3, 124);
  CHECK(matrix_csv(a.design.matrix()) != matrix_csv(c.design.matrix()));
}

TEST_CASE("planted coefficients have the documented shape") {
  const auto instance = generate_instance(5, 9, 4, 0.2, 77);
  CHECK(instance.support.size() == 4);
  CHECK(std::is_sorted(instance.support.begin(), instance.support.end()));
  int nonzeros = 0;
  for (int j = 0; j < instance.p; ++j) {
    const double value = instance.beta_true(j);
    if (value != 0.0) {
      ++nonzeros;
      CHECK(std::abs(value) >= 0.5);
      CHECK(std::abs(value) <= 2.0);
    }
  }
  CHECK(nonzeros == 4);
}

TEST_CASE("degenerate generation settings") {
  SUBCASE("s = 0 leaves pure noise") {
    const auto instance = generate_instance(3, 4, 0, 0.5, 9);
    CHECK(instance.beta_true.norm() == 0.0);
    CHECK((instance.response.values() - instance.noise).norm() == 0.0);
  }
  SUBCASE("sigma = 0 gives an exact linear model") {
    const auto instance = generate_instance(3, 4, 2, 0.0, 9);
    const Eigen::VectorXd fitted =
        instance.design.matrix() * instance.beta_true;
    CHECK((instance.response.values() - fitted).norm() == 0.0);
  }
  SUBCASE("invalid dimensions throw") {
    CHECK_THROWS_AS(generate_instance(0, 4, 0, 0.5, 1), Error);
    CHECK_THROWS_AS(generate_instance(3, 4, 5, 0.5, 1), Error);
    CHECK_THROWS_AS(generate_instance(3, 4, 2, -1.0, 1), Error);
  }
}

TEST_CASE("inverse normal CDF matches reference quantiles") {
  CHECK(Rng::normal_inverse_cdf(0.5) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(Rng::normal_inverse_cdf(0.975) ==
        doctest::Approx(1.959963984540054).epsilon(1e-8));
  CHECK(Rng::normal_inverse_cdf(0.025) ==
        doctest::Approx(-1.959963984540054).epsilon(1e-8));
  CHECK(Rng::normal_inverse_cdf(1e-4) ==
        doctest::Approx(-3.719016485455709).epsilon(1e-8));
  CHECK(Rng::normal_inverse_cdf(0.8413447460685429) ==
        doctest::Approx(1.0).epsilon(1e-8));
  CHECK_THROWS_AS(Rng::normal_inverse_cdf(0.0), Error);
}

TEST_CASE("CSV writes round-trip exactly") {
  const auto instance = generate_instance(4, 3, 1, 0.7, 5);
  const std::string first = matrix_csv(instance.design.matrix());
  const auto path = temp_file("lassopath_roundtrip.csv");
  write_text_file(path, first);
  const Eigen::MatrixXd back = read_matrix_csv(path);
  CHECK(matrix_csv(back) == first);
  std::filesystem::remove(path);
}

TEST_CASE("CSV parse errors carry file, line and column") {
  const auto path = temp_file("lassopath_bad.csv");

  SUBCASE("bad token") {
    write_text_file(path, "1.0,2.0\n3.0,oops\n");
    try {
      read_matrix_csv(path);
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.line == 2);
      CHECK(e.col == 5);
      CHECK(std::string(e.what()).find(path.string()) != std::string::npos);
    }
  }
  SUBCASE("ragged rows") {
    write_text_file(path, "1.0,2.0\n3.0\n");
    CHECK_THROWS_AS(read_matrix_csv(path), ParseError);
  }
  SUBCASE("empty file") {
    write_text_file(path, "");
    CHECK_THROWS_AS(read_matrix_csv(path), ParseError);
  }
  SUBCASE("vector with multiple columns") {
    write_text_file(path, "1.0,2.0\n");
    CHECK_THROWS_AS(read_vector_csv(path), ParseError);
  }
  std::filesystem::remove(path);
}

TEST_CASE("format_double round-trips") {
  lassopath::Rng rng(2024);
  for (int i = 0; i < 200; ++i) {
    const double value = (rng.uniform01() - 0.5) * std::pow(10.0, rng.uniform_int(40) - 20);
    const std::string text = format_double(value);
    CHECK(std::stod(text) == value);
  }
}
