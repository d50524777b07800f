#include "pdlg/checkpoint.hpp"

#include <bit>
#include <cstring>
#include <fstream>

#include "pdlg/error.hpp"

static_assert(std::endian::native == std::endian::little,
              "checkpoint format assumes a little-endian host");

namespace pdlg {
namespace {

constexpr char kMagic[8] = {'P', 'D', 'L', 'G', 'C', 'K', 'P', 'T'};
constexpr std::uint32_t kVersion = 1;

struct Writer {
  std::ofstream out;
  explicit Writer(const std::string& path) : out(path, std::ios::binary) {
    if (!out) throw CorpusError("cannot write checkpoint " + path);
  }
  void bytes(const void* p, std::size_t n) {
    out.write(static_cast<const char*>(p), static_cast<std::streamsize>(n));
  }
  void u32(std::uint32_t v) { bytes(&v, 4); }
  void u64(std::uint64_t v) { bytes(&v, 8); }
  void f64(double v) { bytes(&v, 8); }
  void mat_f32(const Mat& m) {
    std::vector<float> buf(m.a.size());
    for (std::size_t i = 0; i < m.a.size(); ++i)
      buf[i] = static_cast<float>(m.a[i]);
    bytes(buf.data(), buf.size() * 4);
  }
  void close(const std::string& path) {
    out.close();
    if (!out) throw CorpusError("failed writing checkpoint " + path);
  }
};

struct Reader {
  std::vector<char> buf;
  std::size_t pos = 0;
  std::string path;
  explicit Reader(const std::string& p) : path(p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw CorpusError("cannot open checkpoint " + p);
    buf.assign(std::istreambuf_iterator<char>(in), {});
  }
  void bytes(void* p, std::size_t n) {
    if (pos + n > buf.size())
      throw CorpusError("truncated checkpoint " + path);
    std::memcpy(p, buf.data() + pos, n);
    pos += n;
  }
  std::uint32_t u32() { std::uint32_t v; bytes(&v, 4); return v; }
  std::uint64_t u64() { std::uint64_t v; bytes(&v, 8); return v; }
  double f64() { double v; bytes(&v, 8); return v; }
  Mat mat_f32(int rows, int cols) {
    Mat m(rows, cols);
    std::vector<float> tmp(m.a.size());
    bytes(tmp.data(), tmp.size() * 4);
    for (std::size_t i = 0; i < tmp.size(); ++i)
      m.a[i] = static_cast<double>(tmp[i]);
    return m;
  }
  void done() {
    if (pos != buf.size())
      throw CorpusError("trailing bytes in checkpoint " + path);
  }
};

void write_header(Writer& w, ModelKind kind, std::uint32_t vocab_size,
                  std::uint64_t vocab_hash) {
  w.bytes(kMagic, 8);
  w.u32(kVersion);
  w.u32(static_cast<std::uint32_t>(kind));
  w.u32(vocab_size);
  w.u64(vocab_hash);
}

ModelKind read_header(Reader& r, std::uint32_t& vocab_size,
                      std::uint64_t& vocab_hash) {
  char magic[8];
  r.bytes(magic, 8);
  if (std::memcmp(magic, kMagic, 8) != 0)
    throw CorpusError("bad checkpoint magic in " + r.path);
  std::uint32_t ver = r.u32();
  if (ver != kVersion)
    throw CorpusError("unsupported checkpoint version in " + r.path);
  std::uint32_t kind = r.u32();
  if (kind > 2) throw CorpusError("unknown model kind in " + r.path);
  vocab_size = r.u32();
  vocab_hash = r.u64();
  return static_cast<ModelKind>(kind);
}

}  // namespace

void save_checkpoint(const std::string& path, const SEModel& model) {
  Writer w(path);
  write_header(w, ModelKind::se, static_cast<std::uint32_t>(model.A.cols),
               model.vocab_hash);
  w.u32(static_cast<std::uint32_t>(model.hp.dim));
  w.f64(model.hp.lr);
  w.f64(model.hp.margin);
  w.u32(static_cast<std::uint32_t>(model.hp.negatives));
  w.u32(model.hp.use_history ? 1 : 0);
  w.mat_f32(model.A);
  w.mat_f32(model.B);
  w.close(path);
}

void save_checkpoint(const std::string& path, const MemNNModel& model) {
  Writer w(path);
  write_header(w,
               model.split ? ModelKind::memnn_split : ModelKind::memnn_standard,
               static_cast<std::uint32_t>(model.A.cols), model.vocab_hash);
  w.u32(static_cast<std::uint32_t>(model.hp.dim));
  w.f64(model.hp.lr);
  w.f64(model.hp.margin);
  w.u32(static_cast<std::uint32_t>(model.hp.negatives));
  w.u32(static_cast<std::uint32_t>(model.hp.hops));
  w.u32(static_cast<std::uint32_t>(model.hp.max_memories));
  w.mat_f32(model.A);
  for (const Mat& r : model.R) w.mat_f32(r);
  w.mat_f32(model.T);
  w.close(path);
}

ModelKind peek_checkpoint_kind(const std::string& path) {
  Reader r(path);
  std::uint32_t vs;
  std::uint64_t vh;
  return read_header(r, vs, vh);
}

SEModel load_se_checkpoint(const std::string& path,
                           std::uint64_t expected_vocab_hash) {
  Reader r(path);
  std::uint32_t vocab_size;
  std::uint64_t vocab_hash;
  ModelKind kind = read_header(r, vocab_size, vocab_hash);
  if (kind != ModelKind::se)
    throw CorpusError("checkpoint " + path + " is not a supervised-embedding model");
  if (vocab_hash != expected_vocab_hash)
    throw CorpusError("vocabulary hash mismatch for checkpoint " + path);
  SEModel m;
  m.vocab_hash = vocab_hash;
  m.hp.dim = static_cast<int>(r.u32());
  m.hp.lr = r.f64();
  m.hp.margin = r.f64();
  m.hp.negatives = static_cast<int>(r.u32());
  m.hp.use_history = r.u32() != 0;
  m.A = r.mat_f32(m.hp.dim, static_cast<int>(vocab_size));
  m.B = r.mat_f32(m.hp.dim, static_cast<int>(vocab_size));
  r.done();
  return m;
}

MemNNModel load_memnn_checkpoint(const std::string& path,
                                 std::uint64_t expected_vocab_hash) {
  Reader r(path);
  std::uint32_t vocab_size;
  std::uint64_t vocab_hash;
  ModelKind kind = read_header(r, vocab_size, vocab_hash);
  if (kind == ModelKind::se)
    throw CorpusError("checkpoint " + path + " is not a memory network");
  if (vocab_hash != expected_vocab_hash)
    throw CorpusError("vocabulary hash mismatch for checkpoint " + path);
  MemNNModel m;
  m.split = kind == ModelKind::memnn_split;
  m.vocab_hash = vocab_hash;
  m.hp.dim = static_cast<int>(r.u32());
  m.hp.lr = r.f64();
  m.hp.margin = r.f64();
  m.hp.negatives = static_cast<int>(r.u32());
  m.hp.hops = static_cast<int>(r.u32());
  m.hp.max_memories = static_cast<int>(r.u32());
  m.A = r.mat_f32(m.hp.dim, static_cast<int>(vocab_size));
  m.R.clear();
  for (int k = 0; k < m.hp.hops; ++k)
    m.R.push_back(r.mat_f32(m.hp.dim, m.hp.dim));
  m.T = r.mat_f32(m.hp.dim, m.hp.max_memories);
  r.done();
  return m;
}

}  // namespace pdlg
