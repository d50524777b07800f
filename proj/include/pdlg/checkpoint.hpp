#pragma once

#include <cstdint>
#include <string>

#include "pdlg/embed_model.hpp"
#include "pdlg/memnn.hpp"

namespace pdlg {

enum class ModelKind { se = 0, memnn_standard = 1, memnn_split = 2 };

// Binary little-endian checkpoint: magic, format version, model kind,
// vocabulary size + hash, hyperparameters, then raw float32 parameter
// arrays.  Loading refuses a checkpoint whose vocabulary hash does not match
// the vocabulary it will be used with.  save -> load -> save is
// byte-identical.
void save_checkpoint(const std::string& path, const SEModel& model);
void save_checkpoint(const std::string& path, const MemNNModel& model);

ModelKind peek_checkpoint_kind(const std::string& path);

SEModel load_se_checkpoint(const std::string& path,
                           std::uint64_t expected_vocab_hash);
MemNNModel load_memnn_checkpoint(const std::string& path,
                                 std::uint64_t expected_vocab_hash);

}  // namespace pdlg
