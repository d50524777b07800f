#pragma once

#include <map>
#include <string>

#include "pdlg/kb.hpp"

namespace pdlg {

// The 15 bot utterance templates.  Each has 6 surface variants keyed by the
// user's (gender, age) style; api_call is the same for all styles.
enum class BotTemplate {
  greet = 0,
  on_it,
  ask_cuisine,
  ask_location,
  ask_price,
  ask_party,
  api_call,
  ask_update,
  searching,
  propose,
  find_another,
  here_is,
  anything_else,
  reserve,
  welcome,
  kCount,
};

constexpr int kBotTemplateCount = static_cast<int>(BotTemplate::kCount);
constexpr int kStyleCount = 6;

// raw variant text; slot placeholders appear as {name}
const std::string& bot_template_text(BotTemplate t, int style);

// substitutes {slot} placeholders; throws CorpusError on an unbound slot
std::string render_bot_utterance(BotTemplate t, int style,
                                 const std::map<std::string, std::string>& slots);

}  // namespace pdlg
