#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "cpool/hashplan.hpp"
#include "cpool/tensor.hpp"

namespace cpool {

using AnyTensor = std::variant<DenseTensor, ComplexTensor>;

// TSK1 tensor file, all integers little-endian:
//
//   offset 0  magic    "TSK1"
//          4  version  u8 = 1
//          5  order    u8
//          6  dtype    u8 (0 = real64, 1 = complex pair of real64)
//          7  reserved u8 = 0
//          8  dims     order x u64
//          .  values   row-major IEEE-754 binary64; complex as (re, im)
//
// The file length must equal header + payload exactly.
inline constexpr char kTensorMagic[4] = {'T', 'S', 'K', '1'};
inline constexpr std::uint8_t kTensorVersion = 1;

std::vector<std::uint8_t> encode_tensor(const AnyTensor& t);
AnyTensor decode_tensor(std::span<const std::uint8_t> bytes);

void write_tensor(const AnyTensor& t, const std::filesystem::path& path);
AnyTensor read_tensor(const std::filesystem::path& path);

// Reads a file that must hold a real tensor.
DenseTensor read_dense(const std::filesystem::path& path);

void write_plan(const SketchPlan& plan, const std::filesystem::path& path);
SketchPlan read_plan(const std::filesystem::path& path);

enum class BenchMethod { mcb, mct, poly };
enum class BenchMetric { rel_err_inner, max_abs_err, runtime_ns, bytes };

const char* to_string(BenchMethod m);
const char* to_string(BenchMetric m);

// One row of a benchmark sweep. Size fields not used by a method stay empty.
struct BenchRecord {
  BenchMethod method = BenchMethod::mcb;
  std::optional<std::uint64_t> n1, n2, C, H, W, L;
  std::uint64_t d = 0;
  std::uint64_t trial = 0;
  std::uint64_t seed = 0;
  BenchMetric metric = BenchMetric::rel_err_inner;
  double value = 0.0;
};

inline constexpr const char* kCsvHeader = "method,n1,n2,C,H,W,L,d,trial,seed,metric,value";

// Header plus one line per record; reals use 17 significant digits.
std::string format_csv(const std::vector<BenchRecord>& records);
void write_csv(const std::vector<BenchRecord>& records, const std::filesystem::path& path);

}  // namespace cpool
