#include <gtest/gtest.h>

#include <nlohmann/json.hpp>

#include "oseen/errors.hpp"
#include "oseen/verify.hpp"

using namespace oseen;

namespace {

const VerificationReport& default_report() {
  static const VerificationReport rep = run_all();
  return rep;
}

const CheckItem* find(const VerificationReport& rep, const std::string& name) {
  for (const auto& it : rep.items) {
    if (it.name == name) return &it;
  }
  return nullptr;
}

}  // namespace

TEST(RunAll, DefaultConfigurationPasses) {
  const VerificationReport& rep = default_report();
  EXPECT_TRUE(rep.pass);
  for (const auto& it : rep.items) {
    EXPECT_TRUE(it.pass) << it.name << " margin " << it.worst_margin << " at " << it.witness;
    EXPECT_GT(it.samples, 0) << it.name;
    EXPECT_FALSE(it.anchor.empty()) << it.name;
  }
  for (const char* name : {"sigma_delta_bound", "kernel_fourier_identity", "metric_slowness",
                           "change_of_variables_isometry", "kernel_k1_identity", "case_partition"}) {
    EXPECT_NE(find(rep, name), nullptr) << name;
  }
}

TEST(RunAll, LargeDeltaFailsWithWitness) {
  VerifyConfig cfg;
  cfg.delta = 0.42;
  cfg.random_samples = 500;
  cfg.metric_samples = 2000;
  const VerificationReport rep = run_all(cfg);
  EXPECT_FALSE(rep.pass);
  const CheckItem* it = find(rep, "sigma_delta_bound");
  ASSERT_NE(it, nullptr);
  EXPECT_FALSE(it->pass);
  EXPECT_LT(it->worst_margin, 0.0);
  EXPECT_FALSE(it->witness.empty());
}

TEST(Report, JsonAndTextRenderings) {
  const VerificationReport& rep = default_report();
  const auto j = nlohmann::json::parse(rep.to_json());
  EXPECT_EQ(j.at("pass").get<bool>(), rep.pass);
  ASSERT_EQ(j.at("items").size(), rep.items.size());
  for (const auto& item : j.at("items")) {
    for (const char* key : {"name", "anchor", "samples", "worst_margin", "pass", "witness"}) {
      EXPECT_TRUE(item.contains(key)) << key;
    }
  }
  const std::string text = rep.to_text();
  EXPECT_NE(text.find("overall: PASS"), std::string::npos);
}

TEST(Metric, DomainAndSamples) {
  EXPECT_THROW(check_metric(0.5, 100), DomainError);
  const MetricCheck m = check_metric(1.0, 5000);
  EXPECT_EQ(m.samples, 5000);
  EXPECT_TRUE(m.pass);
  EXPECT_GE(m.slowness_margin, 0.0);
  EXPECT_GT(m.temperance_constant, 0.0);
}

TEST(Kernel, DirectChecks) {
  EXPECT_LT(fourier_kernel_error(3, -12.0, 3.0, 601), 1e-6);
  EXPECT_LT(kernel_identity_error(-12.0, 3.0, 601), 1e-6);
  EXPECT_LT(biot_savart_inverse_error(2, -8.0, 4.0, 2401), 1e-5);
  const CheckItem w = check_weighted_kernel_bound(3, -12.0, 3.0, 601);
  EXPECT_TRUE(w.pass);
  EXPECT_THROW(check_weighted_kernel_bound(2, -12.0, 3.0, 601), ContractError);
}
