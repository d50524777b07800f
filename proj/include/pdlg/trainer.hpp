#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pdlg/evaluate.hpp"

namespace pdlg {

struct TrainSpec {
  int task = 1;
  std::string model = "memnn";  // se | memnn | memnn-split
  std::string data_dir;
  std::string out_dir;
  std::uint64_t seed = 1;

  // hyperparameter overrides; negative/unset values keep the task defaults
  int dim = -1;
  double lr = -1.0;
  double margin = -1.0;
  int negatives = -1;
  int hops = -1;
  int history = -1;  // -1 default, 0 off, 1 on

  int epoch_cap = -1;  // default: 200 when trn has <= 1000 dialogs, else 100
  int patience = 10;
  int max_train_dialogs = -1;  // truncate the training set when > 0

  // explicit corpus files override the task-derived paths (multitask runs)
  std::vector<std::string> trn_files, dev_files, tst_files;
  bool eval_oov = true;
  bool quiet = false;
};

struct TrainResult {
  EvalMetrics test;
  EvalMetrics test_oov;
  bool has_oov = false;
  std::vector<double> dev_curve;
  int best_epoch = -1;
  double best_dev = 0.0;
  int epochs_run = 0;
  double train_wall_seconds = 0.0;
  std::string checkpoint_path;
  std::string metrics_path;
};

// Trains with plain SGD, evaluating on dev after every epoch.  The best dev
// model is kept; training stops after `patience` epochs without improvement
// or at the epoch cap.  The best model is written to
// <out_dir>/checkpoint.bin and a metrics summary to <out_dir>/metrics.json.
TrainResult train_model(const TrainSpec& spec);

}  // namespace pdlg
