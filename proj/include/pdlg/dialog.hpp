#pragma once

#include <functional>
#include <string>
#include <vector>

namespace pdlg {

enum class LineKind { profile, fact, exchange };

struct DialogLine {
  LineKind kind = LineKind::exchange;
  std::string text;  // profile or fact line (untabbed)
  std::string user;  // exchange only; may be the silence token
  std::string bot;
};

struct Dialog {
  std::vector<DialogLine> lines;
};

// One dialog serializes to numbered lines: "<n> <user>\t<bot>" for exchanges,
// "<n> <text>" for the profile line and KB fact lines, n starting at 1.
std::string serialize_dialog(const Dialog& d);

// Strict inverse.  Rejects: more than one tab in a line, numbering that does
// not start at 1 and increment by 1, a first line that is not a profile line,
// or an empty block.  base_line is used in error messages.
Dialog parse_dialog(const std::vector<std::string>& lines, std::size_t base_line = 1);

// Blank-line-separated dialog blocks; calls fn for each parsed dialog.
// Returns the number of dialogs.
std::size_t for_each_dialog(const std::string& path,
                            const std::function<void(Dialog&&)>& fn);

std::vector<Dialog> load_corpus(const std::string& path);

void write_corpus(const std::string& path, const std::vector<Dialog>& dialogs);

// incremental writer used by generation so full corpora never sit in memory
class CorpusWriter {
 public:
  explicit CorpusWriter(const std::string& path);
  ~CorpusWriter();
  void add(const Dialog& d);
  std::size_t count() const { return count_; }

 private:
  struct Impl;
  Impl* impl_;
  std::size_t count_ = 0;
};

}  // namespace pdlg
