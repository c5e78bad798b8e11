#include "pinch/certify.hpp"
#include "pinch/errors.hpp"
#include "pinch/serialize.hpp"

#include <gtest/gtest.h>

#include <sstream>

namespace {

using namespace pinch;

CertifyOptions quick() {
  CertifyOptions o;
  o.budget = 256;
  o.seed = 11;
  return o;
}

TEST(Certify, DimensionFour) {
  const Certificate c = certify_dimension(4, quick());
  EXPECT_EQ(c.spec.k, 2);
  EXPECT_EQ(c.spec.sign, 1);
  EXPECT_TRUE(c.unimodular);
  EXPECT_TRUE(c.charpoly_matches);
  EXPECT_LT(c.root_crosscheck, 1e-10);
  EXPECT_LT(std::abs(c.lambda_sum), 1e-12);
  EXPECT_NEAR(c.lambda_max, 0.481211825059603447, 1e-12);
  EXPECT_NEAR(c.spectral_margin, 0.0187881749403965525, 1e-12);
  EXPECT_TRUE(c.spectral_bound_holds);
  EXPECT_NEAR(c.curv_bound, 0.636803256587284579, 1e-12);
  EXPECT_LE(c.curv_sampled_max, c.curv_bound);
  EXPECT_TRUE(c.curvature_respected);
  EXPECT_NEAR(c.target, 0.75, 1e-15);
  EXPECT_LT(c.product, c.target);
  EXPECT_LT(c.diam_upper, diameter_threshold());
  EXPECT_NEAR(c.product, c.curv_bound * c.diam_upper * c.diam_upper, 1e-15);
  EXPECT_NEAR(c.diam_upper_paper - c.diam_upper, 0.5, 1e-15);
  EXPECT_TRUE(c.passes);
  EXPECT_TRUE(c.error.empty());
}

TEST(Certify, OddDimensionRecordsSpectralGap) {
  const Certificate c = certify_dimension(3, quick());
  EXPECT_FALSE(c.spectral_bound_holds);
  EXPECT_NEAR(c.spectral_margin, -0.295756983452540228, 1e-12);
  EXPECT_TRUE(c.passes);
}

TEST(Certify, WitnessAwayFromNilpotent) {
  const Certificate c = certify_dimension(2, quick());
  EXPECT_NEAR(c.not_nilcoverable_witness, 1.61803398874989485, 1e-9);
}

TEST(Certify, ExplicitRefinement) {
  CertifyOptions o = quick();
  o.h = 1;
  const Certificate coarse = certify_dimension(4, o);
  EXPECT_EQ(coarse.h, 1);
  EXPECT_FALSE(coarse.passes);
  o.h = 0;
  EXPECT_THROW(certify_dimension(4, o), InvalidArgument);
}

TEST(Certify, PaperModeUsesWiderBase) {
  CertifyOptions o = quick();
  o.paper_mode = true;
  const Certificate c = certify_dimension(4, o);
  EXPECT_TRUE(c.paper_mode);
  EXPECT_LT(c.diam_upper_paper, diameter_threshold());
  EXPECT_TRUE(c.passes_paper_mode);
  EXPECT_GE(c.h, certify_dimension(4, quick()).h);
}

TEST(Certify, RejectsSmallDimensions) {
  EXPECT_THROW(certify_dimension(1, quick()), InvalidArgument);
  EXPECT_THROW(certify_dimension(0, quick()), InvalidArgument);
}

TEST(Table, SmallRangePasses) {
  const auto rows = table(parse_dims("2..6"), quick());
  ASSERT_EQ(rows.size(), 5u);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    EXPECT_EQ(rows[i].n, static_cast<int>(i) + 2);
    EXPECT_TRUE(rows[i].passes) << "n=" << rows[i].n;
  }
}

TEST(Table, EvenDimensionsKeepSpectralBound) {
  for (const auto& c : table(parse_dims("2..16", true), quick())) {
    ASSERT_TRUE(c.error.empty()) << c.error;
    EXPECT_EQ(c.n % 2, 0);
    EXPECT_TRUE(c.spectral_bound_holds) << "n=" << c.n;
    EXPECT_NEAR(c.lambda_max * c.n / 2.0, 0.962423650119206895, 1e-12);
  }
}

TEST(Table, RecordsErrorsPerRow) {
  const auto rows = table({1, 2}, quick());
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_FALSE(rows[0].error.empty());
  EXPECT_FALSE(rows[0].passes);
  EXPECT_TRUE(rows[1].error.empty());
}

TEST(ParseDims, Forms) {
  EXPECT_EQ(parse_dims("5"), std::vector<int>{5});
  EXPECT_EQ(parse_dims("2..5"), (std::vector<int>{2, 3, 4, 5}));
  EXPECT_EQ(parse_dims("2..7", true), (std::vector<int>{2, 4, 6}));
  EXPECT_TRUE(parse_dims("6..2").empty());
  EXPECT_THROW(parse_dims(""), InvalidArgument);
  EXPECT_THROW(parse_dims("2..x"), InvalidArgument);
  EXPECT_THROW(parse_dims("2.."), InvalidArgument);
  EXPECT_THROW(parse_dims("3a"), InvalidArgument);
}

TEST(Serialize, DeterministicJson) {
  const std::string a = certificate_document(certify_dimension(3, quick())).dump(2);
  const std::string b = certificate_document(certify_dimension(3, quick())).dump(2);
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.find("runtime_ms"), std::string::npos);
  EXPECT_NE(certificate_document(certify_dimension(3, quick()), true).dump().find("runtime_ms"),
            std::string::npos);
}

TEST(Serialize, DocumentShape) {
  const auto doc = certificate_document(certify_dimension(2, quick()));
  EXPECT_EQ(doc.at("schema"), kSchema);
  const auto& c = doc.at("certificate");
  EXPECT_EQ(c.at("n"), 2);
  EXPECT_EQ(c.at("polynomial"), nlohmann::json::parse(R"(["1","-3","1"])"));
  EXPECT_TRUE(c.at("passes").get<bool>());
}

TEST(Serialize, PolynomialRoundTrip) {
  for (int n = 2; n <= 33; ++n) {
    const IntPoly p = build_polynomial(PolySpec::for_dimension(n));
    EXPECT_EQ(int_poly_from_json(to_json(p)), p);
  }
  EXPECT_THROW(int_poly_from_json(nlohmann::json::array()), InvalidArgument);
  EXPECT_THROW(int_poly_from_json(nlohmann::json::parse("[1, 2]")), InvalidArgument);
  EXPECT_THROW(int_poly_from_json(nlohmann::json::parse(R"(["1", "x"])")), InvalidArgument);
}

TEST(Serialize, Round15) {
  EXPECT_EQ(round15(0.1 + 0.2), 0.3);
  EXPECT_EQ(round15(2.0), 2.0);
  EXPECT_TRUE(std::isnan(round15(std::nan(""))));
}

TEST(Serialize, CsvLayout) {
  auto rows = table({2, 1}, quick());
  std::ostringstream os;
  write_csv(os, rows);
  std::istringstream in(os.str());
  std::string header, good, bad;
  std::getline(in, header);
  std::getline(in, good);
  std::getline(in, bad);
  EXPECT_EQ(header,
            "n,k,sign,odd_factor,lambda_max,two_over_n,spectral_ok,curv_bound,curv_sampled,h,"
            "diam_upper,diam_upper_paper,product,product_paper,target,passes,passes_paper_mode,"
            "witness,seed,runtime_ms");
  auto fields = [](const std::string& line) {
    return static_cast<std::size_t>(std::count(line.begin(), line.end(), ',')) + 1;
  };
  EXPECT_EQ(fields(good), csv_columns().size());
  EXPECT_EQ(fields(bad), csv_columns().size());
  EXPECT_EQ(good.rfind("2,1,-1,false,", 0), 0u);
  EXPECT_NE(bad.find("nan"), std::string::npos);
}

}  // namespace
