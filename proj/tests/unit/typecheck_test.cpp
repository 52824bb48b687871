#include <gtest/gtest.h>

#include <random>
#include <set>

#include "chromac/lang/type_check.hpp"
#include "support/generator.hpp"
#include "support/programs.hpp"

namespace chromac::lang {
namespace {

using testsupport::check_golden;
using testsupport::typing_goldens;

ShapedType output_type(const std::string& src) {
  const TypedProgram tp = check_source(src);
  return tp.bindings.at(tp.program.outputs.back().name);
}

std::string rejected(const std::string& src) {
  try {
    (void)check_source(src);
  } catch (const CompileError& e) {
    return std::string(error_class_name(e.error_class()));
  }
  return "accepted";
}

TEST(TypingGoldens, AtLeastThirty) { EXPECT_GE(typing_goldens().size(), 30u); }

TEST(TypingGoldens, EachBehavesAsExpected) {
  for (const auto& g : typing_goldens()) {
    EXPECT_EQ(check_golden(g), "") << g.path.filename();
  }
}

TEST(TypingGoldens, CoverEveryRule) {
  std::set<std::string> accepted_rules;
  for (const auto& g : typing_goldens()) {
    if (g.accept) accepted_rules.insert(g.expected);
  }
  for (const char* rule : {"LightAdd", "TristimulusAdd", "PerceptualAdd", "Reflect", "PgmtInit", "PgmtMix",
                           "TriScale", "Cast", "MatrixAdd", "MatMul", "Channel"}) {
    EXPECT_TRUE(accepted_rules.count(rule)) << rule;
  }
}

TEST(TypeCheck, LightAdd) {
  EXPECT_EQ(output_type("input a : Light[4]\ninput b : Light[4]\nc = a + b\noutput c"),
            (ShapedType{PhysicalType::Light, Shape{4}}));
}

TEST(TypeCheck, SrgbPlusXyzIsRejected) {
  EXPECT_EQ(rejected("input a : sRGB[2,2]\ninput b : XYZ[2,2]\nc = a + b\noutput c"), "type-mismatch");
}

TEST(TypeCheck, PigmentMix) {
  EXPECT_EQ(output_type("input c1 : Matrix[1]\ninput c2 : Matrix[1]\ninput p : Pigment[5]\ninput q : Pigment[5]\n"
                        "m = mix(c1, p, c2, q)\noutput m"),
            (ShapedType{PhysicalType::Pigment, Shape{5}}));
}

TEST(TypeCheck, CastThroughXyz) {
  EXPECT_EQ(output_type("input img : sRGB[2,2]\nl = LAB(img)\noutput l"), (ShapedType{PhysicalType::LAB, Shape{2, 2}}));
}

TEST(TypeCheck, MatmulKeepsTristimulus) {
  EXPECT_EQ(output_type("input img : LMS[1080,1920]\ninput m : Matrix[3,3]\nr = matmul(img, m)\noutput r"),
            (ShapedType{PhysicalType::LMS, Shape{1080, 1920}}));
}

TEST(TypeCheck, ScalarLiteralScalesTristimulus) {
  const TypedProgram tp = check_source("input a : sRGB[2]\nb = a * 0.5\noutput b");
  EXPECT_TRUE(testsupport::uses_rule(tp, "Scalar"));
  EXPECT_TRUE(testsupport::uses_rule(tp, "TriScale"));
}

TEST(TypeCheck, ChannelAddsUnitAxis) {
  EXPECT_EQ(output_type("input a : HSV[4,5]\nh = a.h\noutput h"), (ShapedType{PhysicalType::Matrix, Shape{4, 5, 1}}));
}

TEST(TypeCheck, ErasedShapes) {
  EXPECT_EQ((ShapedType{PhysicalType::XYZ, Shape{2, 2}}).erased(), (Shape{2, 2, 3}));
  EXPECT_EQ((ShapedType{PhysicalType::Pigment, Shape{4}}).erased(), (Shape{4, 178}));
  EXPECT_EQ((ShapedType{PhysicalType::Chromaticity, Shape{1}}).erased(), (Shape{1, 2}));
  EXPECT_EQ((ShapedType{PhysicalType::Matrix, Shape{3, 3}}).erased(), (Shape{3, 3}));
}

// One rejected mutant per rule: swapped operand types, perturbed dimensions, reversed cast.
struct Mutant {
  const char* rule;
  const char* source;
  const char* error;
};

class Mutants : public ::testing::TestWithParam<Mutant> {};

TEST_P(Mutants, Rejected) {
  EXPECT_EQ(rejected(GetParam().source), GetParam().error) << GetParam().rule << "\n" << GetParam().source;
}

INSTANTIATE_TEST_SUITE_P(
    PerRule, Mutants,
    ::testing::Values(
        Mutant{"LightAdd", "input a : Light[4]\ninput b : Light[3]\nc = a + b\noutput c", "dimension-mismatch"},
        Mutant{"LightAdd", "input a : Light[4]\ninput b : Reflectance[4]\nc = a + b\noutput c", "type-mismatch"},
        Mutant{"TristimulusAdd", "input a : XYZ[2]\ninput b : XYZ[3]\nc = a + b\noutput c", "dimension-mismatch"},
        Mutant{"TristimulusAdd", "input a : LMS[2]\ninput b : XYZ[2]\nc = a - b\noutput c", "type-mismatch"},
        Mutant{"PerceptualAdd", "input a : LAB[2]\ninput b : HSV[2]\nc = a + b\noutput c", "type-mismatch"},
        Mutant{"PerceptualAdd", "input a : HSV[2]\ninput b : HSV[2,1]\nc = a + b\noutput c", "dimension-mismatch"},
        Mutant{"Reflect", "input a : Light[4]\ninput b : Light[4]\nc = a * b\noutput c", "type-mismatch"},
        Mutant{"Reflect", "input a : Light[4]\ninput b : Reflectance[2]\nc = a * b\noutput c", "dimension-mismatch"},
        Mutant{"PgmtInit", "input k : Absorption[2]\ninput s : Scattering[2]\np = Pigment(s, k)\noutput p",
               "type-mismatch"},
        Mutant{"PgmtInit", "input k : Absorption[2]\ninput s : Scattering[3]\np = Pigment(k, s)\noutput p",
               "dimension-mismatch"},
        Mutant{"PgmtMix", "input p : Pigment[2]\ninput q : Pigment[2]\nm = mix(p, 0.5, q, 0.5)\noutput m",
               "type-mismatch"},
        Mutant{"PgmtMix", "input p : Pigment[2]\ninput q : Pigment[3]\nm = mix(0.5, p, 0.5, q)\noutput m",
               "dimension-mismatch"},
        Mutant{"TriScale", "input a : XYZ[2]\ninput m : Matrix[2]\nc = a * m\noutput c", "dimension-mismatch"},
        Mutant{"TriScale", "input a : Chromaticity[2]\nc = a * 2\noutput c", "type-mismatch"},
        Mutant{"Cast", "input a : LMS[2]\nc = Light(a)\noutput c", "illegal-cast"},
        Mutant{"Cast", "input a : Reflectance[2]\nc = Pigment(a)\noutput c", "illegal-cast"},
        Mutant{"MatrixAdd", "input a : Matrix[2,3]\ninput b : Matrix[2]\nc = a + b\noutput c", "dimension-mismatch"},
        Mutant{"MatrixAdd", "input a : Matrix[3]\ninput b : XYZ[1]\nc = a + b\noutput c", "type-mismatch"},
        Mutant{"MatMul", "input a : XYZ[2]\ninput m : Matrix[3,4]\nc = matmul(a, m)\noutput c", "dimension-mismatch"},
        Mutant{"MatMul", "input a : Light[2]\ninput m : Matrix[3,3]\nc = matmul(a, m)\noutput c", "type-mismatch"},
        Mutant{"Channel", "input a : XYZ[2]\nc = a.r\noutput c", "unknown-channel"},
        Mutant{"Channel", "input a : Light[2]\nc = a.x\noutput c", "unknown-channel"}));

TEST(TypeCheck, Deterministic) {
  std::mt19937_64 rng(99);
  for (int i = 0; i < 50; ++i) {
    const std::string src = testsupport::random_program(rng);
    const TypedProgram a = check_source(src);
    const TypedProgram b = check_source(src);
    EXPECT_EQ(a.types, b.types);
    EXPECT_EQ(a.rules, b.rules);
  }
}

TEST(Generator, ProducesWellTypedPrograms) {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 300; ++i) {
    const std::string src = testsupport::random_program(rng);
    EXPECT_NO_THROW((void)check_source(src)) << src;
  }
}

TEST(Generator, ReachesEveryRule) {
  std::mt19937_64 rng(2);
  std::set<std::string> seen;
  for (int i = 0; i < 300; ++i) {
    const TypedProgram tp = check_source(testsupport::random_program(rng));
    seen.insert(tp.rules.begin(), tp.rules.end());
  }
  for (const char* rule : {"LightAdd", "TristimulusAdd", "PerceptualAdd", "Reflect", "PgmtInit", "PgmtMix", "TriScale",
                           "PerceptualScale", "Cast", "CastToMatrix", "CastFromMatrix", "MatrixAdd", "MatrixMul",
                           "MatrixDiv", "MatMul", "Channel", "Literal", "Scalar"}) {
    EXPECT_TRUE(seen.count(rule)) << rule;
  }
}

}  // namespace
}  // namespace chromac::lang
