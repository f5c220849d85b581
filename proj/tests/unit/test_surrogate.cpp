#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "gpcq/error.hpp"
#include "gpcq/surrogate.hpp"

using namespace gpcq;

TEST(Parse, IdentityModel) {
  const SurrogateModel m = SurrogateModel::parse("xi1 ~ N(0,1); f = xi1");
  ASSERT_EQ(m.dimension(), 1u);
  EXPECT_EQ(m.variables()[0].name, "xi1");
  EXPECT_EQ(m.variables()[0].distribution, Distribution::gaussian(0.0, 1.0));
  const double p[] = {0.7};
  EXPECT_DOUBLE_EQ(m.evaluate(p), 0.7);
}

TEST(Parse, SyntheticModelHasFourVariables) {
  const SurrogateModel m = synthetic_model();
  ASSERT_EQ(m.dimension(), 4u);
  EXPECT_EQ(m.variables()[3].distribution, Distribution::uniform(-0.5, 0.5));
}

TEST(Parse, TruncatedExpressionReportsEndOfInput) {
  try {
    SurrogateModel::parse("xi1 ~ N(0,1)\nf = xi1 + ");
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_NE(e.message().find("end of input"), std::string::npos);
    EXPECT_EQ(e.line(), 2u);
  }
}

TEST(Parse, Diagnostics) {
  EXPECT_THROW(SurrogateModel::parse("f = xi1"), ParseError);                        // undeclared
  EXPECT_THROW(SurrogateModel::parse("a ~ N(0,1); a ~ U(0,1); f = a"), ParseError);  // duplicate
  EXPECT_THROW(SurrogateModel::parse("a ~ N(0,1); f = tan(a)"), ParseError);          // unknown function
  EXPECT_THROW(SurrogateModel::parse("a ~ N(0,1)"), ParseError);                      // no output
  EXPECT_THROW(SurrogateModel::parse("a ~ N(0,-1); f = a"), ParseError);              // bad stddev
  EXPECT_THROW(SurrogateModel::parse("a ~ U(1,0); f = a"), ParseError);               // empty range
  EXPECT_THROW(SurrogateModel::parse("a ~ N(0,1); f = a $ 2"), ParseError);
}

TEST(Parse, UndeclaredVariablePosition) {
  try {
    SurrogateModel::parse("a ~ N(0,1)\nf = a + bb");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_EQ(e.column(), 9u);
  }
}

TEST(Parse, PrecedenceAndAssociativity) {
  const SurrogateModel m = SurrogateModel::parse("a ~ U(0,1); f = -a^2 + 2^3^2 / 4 * 2 - (1 - a)");
  const double p[] = {3.0};
  EXPECT_DOUBLE_EQ(m.evaluate(p), -9.0 + 512.0 / 4.0 * 2.0 - (1.0 - 3.0));
}

TEST(Parse, CanonicalTextRoundTrips) {
  const SurrogateModel m = synthetic_model();
  const SurrogateModel again = SurrogateModel::parse(m.to_string());
  EXPECT_EQ(m, again);
  EXPECT_EQ(m.to_string(), again.to_string());
  const SurrogateModel tricky = SurrogateModel::parse("a ~ N(-1.5, 2); f = (a - 1) - (a - 2) / (a * (3 ^ a)) ^ -2");
  EXPECT_EQ(SurrogateModel::parse(tricky.to_string()), tricky);
}

TEST(Evaluate, SyntheticHandValues) {
  const SurrogateModel m = synthetic_model();
  const double zero[] = {0.0, 0.0, 0.0, 0.0};
  const double shift[] = {1.0, 0.0, 0.0, 0.0};
  const double edge[] = {0.0, 0.0, 0.0, 0.5};
  EXPECT_NEAR(m.evaluate(zero), 0.5, 1e-15);
  EXPECT_NEAR(m.evaluate(shift), 1.5, 1e-15);
  EXPECT_NEAR(m.evaluate(edge), 0.5 + 0.3 * std::sqrt(1.05), 1e-15);
  EXPECT_NEAR(m.evaluate(edge), 0.807409, 1e-6);
}

TEST(Evaluate, DomainErrors) {
  const SurrogateModel m = SurrogateModel::parse("a ~ N(0,1); f = sqrt(a) / a");
  const double neg[] = {-1.0};
  const double zero[] = {0.0};
  EXPECT_THROW(m.evaluate(neg), NumericalError);
  EXPECT_THROW(m.evaluate(zero), NumericalError);
  const double two[] = {1.0, 2.0};
  EXPECT_THROW(m.evaluate(two), InvalidInput);
}

TEST(Sample, UniformIdentityMean) {
  const SurrogateModel m = SurrogateModel::parse("u ~ U(0,1); f = u");
  const SampleSet s = sample(m, 100000, 7);
  double mean = 0.0;
  for (double v : s.values) mean += v;
  mean /= static_cast<double>(s.count());
  EXPECT_NEAR(mean, 0.5, 0.01);
}

TEST(Sample, GaussianMoments) {
  const SurrogateModel m = SurrogateModel::parse("g ~ N(2, 3); f = g");
  const SampleSet s = sample(m, 200000, 11);
  double mean = 0.0, sq = 0.0;
  for (double v : s.values) mean += v;
  mean /= static_cast<double>(s.count());
  for (double v : s.values) sq += (v - mean) * (v - mean);
  EXPECT_NEAR(mean, 2.0, 0.03);
  EXPECT_NEAR(std::sqrt(sq / static_cast<double>(s.count())), 3.0, 0.03);
}

TEST(Sample, DeterministicPerSeed) {
  const SampleSet a = sample(synthetic_model(), 1000, 42);
  const SampleSet b = sample(synthetic_model(), 1000, 42);
  const SampleSet c = sample(synthetic_model(), 1000, 43);
  EXPECT_EQ(a.values, b.values);
  EXPECT_NE(a.values, c.values);
  EXPECT_EQ(a.stream_scheme, b.stream_scheme);
}

TEST(Sample, TooFewSamples) {
  EXPECT_THROW(sample(synthetic_model(), 1, 1), InvalidInput);
}

TEST(SampleFiles, HeaderAndColumns) {
  std::istringstream in("value,other\n1.5,9\n-2,9\n\n3e-1,9\n");
  EXPECT_EQ(read_samples(in), (std::vector<double>{1.5, -2.0, 0.3}));
  std::istringstream bad("1\nabc\n");
  EXPECT_THROW(read_samples(bad), InvalidInput);
}

TEST(SampleFiles, WriteReadRoundTrip) {
  const SampleSet s = sample(synthetic_model(), 500, 3);
  std::stringstream io;
  write_samples(io, s.values);
  EXPECT_EQ(read_samples(io), s.values);
}
