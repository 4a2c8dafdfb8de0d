#include "cpool/io.hpp"

#include <bit>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <iterator>
#include <sstream>

namespace cpool {

namespace {

constexpr std::size_t kHeaderBytes = 8;

void put_u64(std::vector<std::uint8_t>& out, std::uint64_t v) {
  for (int b = 0; b < 8; ++b) out.push_back(static_cast<std::uint8_t>(v >> (8 * b)));
}

std::uint64_t get_u64(std::span<const std::uint8_t> in, std::size_t offset) {
  std::uint64_t v = 0;
  for (int b = 0; b < 8; ++b) v |= static_cast<std::uint64_t>(in[offset + b]) << (8 * b);
  return v;
}

template <typename T>
void encode_header(std::vector<std::uint8_t>& out, const Tensor<T>& t, std::uint8_t dtype) {
  if (t.order() > 255) throw FormatError("write_tensor: order exceeds 255");
  out.insert(out.end(), std::begin(kTensorMagic), std::end(kTensorMagic));
  out.push_back(kTensorVersion);
  out.push_back(static_cast<std::uint8_t>(t.order()));
  out.push_back(dtype);
  out.push_back(0);
  for (std::size_t d : t.dims()) put_u64(out, d);
}

std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const std::filesystem::path& path, const void* data, std::size_t size) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out.write(static_cast<const char*>(data), static_cast<std::streamsize>(size));
  if (!out) throw IoError("write to '" + path.string() + "' failed");
}

}  // namespace

std::vector<std::uint8_t> encode_tensor(const AnyTensor& any) {
  std::vector<std::uint8_t> out;
  if (const auto* t = std::get_if<DenseTensor>(&any)) {
    out.reserve(kHeaderBytes + 8 * t->order() + 8 * t->size());
    encode_header(out, *t, 0);
    for (double v : t->values()) put_u64(out, std::bit_cast<std::uint64_t>(v));
  } else {
    const auto& c = std::get<ComplexTensor>(any);
    out.reserve(kHeaderBytes + 8 * c.order() + 16 * c.size());
    encode_header(out, c, 1);
    for (const auto& v : c.values()) {
      put_u64(out, std::bit_cast<std::uint64_t>(v.real()));
      put_u64(out, std::bit_cast<std::uint64_t>(v.imag()));
    }
  }
  return out;
}

AnyTensor decode_tensor(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 4 || std::memcmp(bytes.data(), kTensorMagic, 4) != 0) {
    throw BadMagicError("tensor file: bad magic, expected \"TSK1\"");
  }
  if (bytes.size() < kHeaderBytes) throw TruncatedError("tensor file: header truncated");
  if (bytes[4] != kTensorVersion) {
    throw VersionMismatchError("tensor file: version " + std::to_string(bytes[4]) + ", expected " +
                               std::to_string(kTensorVersion));
  }
  const std::size_t order = bytes[5];
  const std::uint8_t dtype = bytes[6];
  if (dtype > 1) throw FormatError("tensor file: unknown dtype " + std::to_string(dtype));
  if (bytes[7] != 0) throw FormatError("tensor file: reserved byte must be zero");
  if (bytes.size() < kHeaderBytes + 8 * order) throw TruncatedError("tensor file: dims truncated");

  Shape dims(order);
  for (std::size_t m = 0; m < order; ++m) {
    const std::uint64_t d = get_u64(bytes, kHeaderBytes + 8 * m);
    if (d == 0) throw FormatError("tensor file: zero dim in mode " + std::to_string(m));
    if constexpr (sizeof(std::size_t) < sizeof(std::uint64_t)) {
      if (d > SIZE_MAX) throw DimsOverflowError("tensor file: dim exceeds the index type");
    }
    dims[m] = static_cast<std::size_t>(d);
  }
  const std::size_t scalars_per_value = dtype == 0 ? 1 : 2;
  std::size_t count = 0;
  std::size_t payload = 0;
  try {
    count = checked_volume(dims);
    payload = checked_mul(checked_mul(count, scalars_per_value), 8);
  } catch (const CapacityError&) {
    throw DimsOverflowError("tensor file: product of dims overflows");
  }

  const std::size_t offset = kHeaderBytes + 8 * order;
  const std::size_t available = bytes.size() - offset;
  if (available < payload) {
    throw TruncatedError("tensor file: payload holds " + std::to_string(available) + " bytes, header declares " +
                         std::to_string(payload));
  }
  if (available > payload) throw FormatError("tensor file: trailing bytes after payload");

  auto real_at = [&](std::size_t k) { return std::bit_cast<double>(get_u64(bytes, offset + 8 * k)); };
  if (dtype == 0) {
    std::vector<double> values(count);
    for (std::size_t k = 0; k < count; ++k) values[k] = real_at(k);
    return DenseTensor(std::move(dims), std::move(values));
  }
  std::vector<std::complex<double>> values(count);
  for (std::size_t k = 0; k < count; ++k) values[k] = {real_at(2 * k), real_at(2 * k + 1)};
  return ComplexTensor(std::move(dims), std::move(values));
}

void write_tensor(const AnyTensor& t, const std::filesystem::path& path) {
  const auto bytes = encode_tensor(t);
  write_file(path, bytes.data(), bytes.size());
}

AnyTensor read_tensor(const std::filesystem::path& path) {
  const auto raw = read_file(path);
  return decode_tensor(raw);
}

DenseTensor read_dense(const std::filesystem::path& path) {
  AnyTensor t = read_tensor(path);
  if (auto* d = std::get_if<DenseTensor>(&t)) return std::move(*d);
  throw FormatError("'" + path.string() + "' holds a complex tensor, expected real");
}

void write_plan(const SketchPlan& plan, const std::filesystem::path& path) {
  const std::string text = save_plan(plan);
  write_file(path, text.data(), text.size());
}

SketchPlan read_plan(const std::filesystem::path& path) {
  const auto raw = read_file(path);
  return load_plan(std::string_view(reinterpret_cast<const char*>(raw.data()), raw.size()));
}

const char* to_string(BenchMethod m) {
  switch (m) {
    case BenchMethod::mcb: return "mcb";
    case BenchMethod::mct: return "mct";
    case BenchMethod::poly: return "poly";
  }
  return "?";
}

const char* to_string(BenchMetric m) {
  switch (m) {
    case BenchMetric::rel_err_inner: return "rel_err_inner";
    case BenchMetric::max_abs_err: return "max_abs_err";
    case BenchMetric::runtime_ns: return "runtime_ns";
    case BenchMetric::bytes: return "bytes";
  }
  return "?";
}

std::string format_csv(const std::vector<BenchRecord>& records) {
  std::ostringstream out;
  out << kCsvHeader << '\n';
  auto opt = [&out](const std::optional<std::uint64_t>& v) {
    if (v) out << *v;
    out << ',';
  };
  char number[32];
  for (const BenchRecord& r : records) {
    out << to_string(r.method) << ',';
    opt(r.n1);
    opt(r.n2);
    opt(r.C);
    opt(r.H);
    opt(r.W);
    opt(r.L);
    std::snprintf(number, sizeof number, "%.17g", r.value);
    out << r.d << ',' << r.trial << ',' << r.seed << ',' << to_string(r.metric) << ',' << number << '\n';
  }
  return out.str();
}

void write_csv(const std::vector<BenchRecord>& records, const std::filesystem::path& path) {
  const std::string text = format_csv(records);
  write_file(path, text.data(), text.size());
}

}  // namespace cpool
