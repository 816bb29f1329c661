#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oig/oig.hpp"
#include "oracles.hpp"

using oig::BitVector;
using oig::ProjectedClass;

namespace {

ProjectedClass make_class(std::size_t m, std::initializer_list<const char*> bits) {
  std::vector<BitVector> hyps;
  for (const char* b : bits) hyps.push_back(BitVector::from_string(b));
  return ProjectedClass(m, std::move(hyps));
}

std::vector<std::string> texts(const ProjectedClass& c) {
  std::vector<std::string> out;
  for (const auto& h : c.hypotheses()) out.push_back(h.to_string());
  return out;
}

ProjectedClass full_cube(std::size_t m) {
  std::vector<BitVector> hyps;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) hyps.push_back(oracle::from_mask(m, mask));
  return ProjectedClass(m, std::move(hyps));
}

ProjectedClass parse(const std::string& text) {
  std::istringstream in(text);
  return oig::parse_class(in);
}

std::size_t parse_error_line(const std::string& text) {
  try {
    parse(text);
  } catch (const oig::ParseError& e) {
    return e.line();
  }
  return 0;
}

}  // namespace

TEST(ProjectedClass, RejectsMalformedInput) {
  EXPECT_THROW(ProjectedClass(3, {}), oig::InputError);
  EXPECT_THROW(make_class(3, {"000", "01"}), oig::InputError);
  EXPECT_THROW(make_class(3, {"000", "000"}), oig::InputError);
  EXPECT_EQ(ProjectedClass::from_set(3, {BitVector(3), BitVector(3)}).size(), 1U);
}

TEST(ProjectedClass, StoredInCanonicalOrder) {
  const auto c = make_class(3, {"110", "001", "000", "100"});
  EXPECT_EQ(texts(c), (std::vector<std::string>{"000", "001", "100", "110"}));
  EXPECT_EQ(c.index_of(BitVector::from_string("100")), 2U);
  EXPECT_EQ(c.index_of(BitVector::from_string("111")), c.size());
}

TEST(Project, Examples) {
  const auto ind4 = oig::build_indicator_class(4);
  EXPECT_EQ(oig::project(ind4, BitVector::from_string("1111")), ind4);
  const auto p = oig::project(ind4, BitVector::from_string("1110"));
  EXPECT_EQ(p.domain_size(), 3U);
  EXPECT_EQ(p.size(), 4U);
  for (const char* h : {"000", "100", "010", "001"}) EXPECT_TRUE(p.contains(BitVector::from_string(h))) << h;

  const auto two = oig::project(make_class(3, {"000", "111"}), BitVector::from_string("010"));
  EXPECT_EQ(texts(two), (std::vector<std::string>{"0", "1"}));

  EXPECT_THROW(oig::project(ind4, BitVector(4)), oig::InputError);
  EXPECT_THROW(oig::project(ind4, BitVector(5)), oig::InputError);
}

TEST(Project, IndicatorProjectionHasKPlusOneHypotheses) {
  for (std::size_t m = 1; m <= 8; ++m) {
    const auto c = oig::build_indicator_class(m);
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << m); ++mask) {
      const BitVector s = oracle::from_mask(m, mask);
      const auto p = oig::project(c, s);
      EXPECT_EQ(p.size(), s.ones_count() + 1) << s.to_string();
      EXPECT_LE(p.size(), c.size());
    }
  }
}

TEST(VcDimension, Examples) {
  EXPECT_EQ(oig::vc_dimension(oig::build_indicator_class(6)), 1U);
  EXPECT_EQ(oig::vc_dimension(oig::build_indicator_class(8)), 1U);
  EXPECT_EQ(oig::vc_dimension(full_cube(3)), 3U);
  EXPECT_EQ(oig::vc_dimension(make_class(3, {"000"})), 0U);
  EXPECT_EQ(oig::vc_dimension(oig::build_bounded_ones_class(6, 2)), 2U);
}

TEST(VcDimension, BoundedOnesHasDimensionD) {
  for (std::size_t m = 1; m <= 8; ++m) {
    for (std::size_t d = 1; d <= m; ++d) {
      EXPECT_EQ(oig::vc_dimension(oig::build_bounded_ones_class(m, d)), d) << "m=" << m << " d=" << d;
    }
  }
}

TEST(VcDimension, AgreesWithBruteForceOnRandomClasses) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t m = 2 + rng() % 5;
    const std::size_t h = 1 + rng() % (std::size_t{1} << m);
    std::vector<BitVector> hyps;
    for (std::size_t i = 0; i < h; ++i) hyps.push_back(oracle::from_mask(m, rng() % (std::uint64_t{1} << m)));
    const auto c = ProjectedClass::from_set(m, hyps);
    EXPECT_EQ(oig::vc_dimension(c), oracle::vc_dimension(c.hypotheses(), m));
  }
}

TEST(VcDimension, NeverGrowsUnderProjection) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t m = 3 + rng() % 4;
    std::vector<BitVector> hyps;
    for (int i = 0; i < 10; ++i) hyps.push_back(oracle::from_mask(m, rng() % (std::uint64_t{1} << m)));
    const auto c = ProjectedClass::from_set(m, hyps);
    const std::size_t dim = oig::vc_dimension(c);
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << m); ++mask) {
      EXPECT_LE(oig::vc_dimension(oig::project(c, oracle::from_mask(m, mask))), dim);
    }
  }
}

TEST(Builders, IndicatorAndBoundedOnes) {
  EXPECT_EQ(texts(oig::build_indicator_class(2)), (std::vector<std::string>{"00", "01", "10"}));
  EXPECT_EQ(oig::build_indicator_class(4).size(), 5U);
  EXPECT_EQ(oig::build_bounded_ones_class(3, 1), oig::build_indicator_class(3));
  EXPECT_EQ(oig::build_bounded_ones_class(4, 2).size(), 11U);
  EXPECT_THROW(oig::build_bounded_ones_class(3, 4), oig::InputError);
  EXPECT_THROW(oig::build_indicator_class(0), oig::InputError);
}

TEST(StarSystem, CanonicalStarChecks) {
  EXPECT_TRUE(oig::is_star_system(oig::build_indicator_class(4), oig::StarSystem::canonical(4)));
  EXPECT_TRUE(oig::is_star_system(oig::build_bounded_ones_class(5, 2), oig::StarSystem::canonical(5)));
  const auto c = make_class(3, {"000", "110"});
  EXPECT_FALSE(oig::is_star_system(c, oig::StarSystem::canonical(3)));
  oig::StarSystem bad{BitVector(3), {BitVector::from_string("100"), BitVector::from_string("010"),
                                     BitVector::from_string("110")}};
  EXPECT_FALSE(oig::is_star_system(full_cube(3), bad));
  EXPECT_THROW(oig::is_star_system(c, oig::StarSystem::canonical(4)), oig::InputError);
}

TEST(ParseClass, ReadsHeaderCommentsAndRows) {
  const auto c = parse("3 2\n000\n111\n");
  EXPECT_EQ(c.domain_size(), 3U);
  EXPECT_EQ(c.size(), 2U);
  const auto d = parse("# a comment\n\n2 3\r\n00\r\n# inner\n01\n10\n");
  EXPECT_EQ(texts(d), (std::vector<std::string>{"00", "01", "10"}));
}

TEST(ParseClass, ErrorsCarryLineNumbers) {
  EXPECT_EQ(parse_error_line("3 2\n000\n11\n"), 3U);
  EXPECT_EQ(parse_error_line("3 2\n000\n0a0\n"), 3U);
  EXPECT_EQ(parse_error_line("# c\n3 2\n000\n001\n000\n"), 5U);
  EXPECT_EQ(parse_error_line("3 3\n010\n100\n010\n"), 4U);
  EXPECT_EQ(parse_error_line("x y\n"), 1U);
  EXPECT_EQ(parse_error_line("3 2 9\n"), 1U);
  EXPECT_EQ(parse_error_line("2 3\n00\n01\n"), 4U);
  EXPECT_EQ(parse_error_line(""), 1U);
}

TEST(ParseClass, LoadFromFile) {
  const auto path = std::filesystem::temp_directory_path() / "oig_test_class.txt";
  {
    std::ofstream out(path);
    out << "4 5\n0000\n1000\n0100\n0010\n0001\n";
  }
  EXPECT_EQ(oig::load_class_file(path.string()), oig::build_indicator_class(4));
  std::filesystem::remove(path);
  EXPECT_THROW(oig::load_class_file(path.string()), oig::InputError);
}
