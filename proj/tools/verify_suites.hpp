#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "celltree/complex_core.hpp"

namespace celltree::cli {

/// Rationals p/q with p and q in [1, 20], drawn from mt19937_64. The
/// reduction to [1, 20] is a plain modulus so output does not depend on the
/// standard library's distribution code.
class WeightSampler {
 public:
  explicit WeightSampler(std::uint64_t seed) : rng_(seed) {}
  Rational next();
  std::vector<Rational> values(std::size_t n);
  /// One weight per cell of every dimension in [lo, hi].
  WeightAssignment cells(const ChainComplex& x, int lo, int hi);

 private:
  std::mt19937_64 rng_;
};

enum class Status { ok, mismatch, skipped };

struct Row {
  std::string instance;
  std::string check;
  std::string value;
  std::string expected;
  Status status = Status::ok;
};

struct SuiteOptions {
  std::uint64_t seed = 1;
  std::uint64_t cap = 0;
  int samples = 5;
};

/// families | theorems | critical | duality; throws std::invalid_argument otherwise.
std::vector<Row> run_suite(const std::string& name, const SuiteOptions& opt);
const std::vector<std::string>& suite_names();

std::string format_rows(const std::string& suite, const std::vector<Row>& rows);

}  // namespace celltree::cli
