#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "pdlg/candidates.hpp"
#include "pdlg/dialog.hpp"
#include "pdlg/kb.hpp"
#include "pdlg/patterns.hpp"

namespace pdlg {

// Rule-based responder.  Re-derives every bot turn from the user turns, the
// profile line, and the KB facts visible so far; shares no code path with the
// generator so round-trip agreement is a real consistency check.
struct OracleState {
  enum class Phase { slot_filling, awaiting_update, displaying, info, closed };
  Phase phase = Phase::slot_filling;
  std::array<std::optional<int>, 4> slots;  // by Field
  bool greeted = false;
  bool request_seen = false;
  bool searching_announced = false;
  bool api_called = false;
  // displaying
  std::vector<std::string> proposals;  // ranked names, built from visible facts
  std::size_t cursor = 0;
  std::string booked;
};

// a fact line as visible inside a dialog
struct VisibleFact {
  std::string name;
  std::string rel;
  std::string value;
};

VisibleFact parse_fact_line(const std::string& text);

class Oracle {
 public:
  Oracle(const KbConfig& config);

  // Pure step: consumes one user utterance, returns the bot utterance and the
  // updated state.  Throws CorpusError on unparseable input or a state that
  // no task flow can reach.
  std::pair<std::string, OracleState> step(
      const OracleState& state, const Profile& profile,
      const std::string& user_text,
      const std::vector<VisibleFact>& visible_facts) const;

  // ranking adapter: index of the gold utterance in the candidate set
  int rank(const OracleState& state, const Profile& profile,
           const std::string& user_text,
           const std::vector<VisibleFact>& visible_facts,
           const CandidateSet& candidates) const;

  const KbConfig& config() const { return config_; }
  const Lexicon& lexicon() const { return lex_; }

 private:
  KbConfig config_;
  Lexicon lex_;
};

Profile parse_profile_line(const std::string& text, const KbConfig& config);

struct VerifyResult {
  std::size_t dialogs = 0;
  std::size_t exchanges = 0;
  std::size_t mismatches = 0;
  std::string first_mismatch;  // human-readable location + expected/actual
};

// replays every user turn of every dialog through the oracle and compares
// each bot turn byte-for-byte
VerifyResult verify_corpus_file(const Oracle& oracle, const std::string& path);

}  // namespace pdlg
