#include "pdlg/templates.hpp"

#include <array>

#include "pdlg/error.hpp"

namespace pdlg {

namespace {

// style column order: (male,young) (female,young) (male,middle-aged)
// (female,middle-aged) (male,elderly) (female,elderly)
const std::array<std::array<std::string, kStyleCount>, kBotTemplateCount> kTable = {{
    // greet
    {{"hey dude what is up",
      "hey girl how is it going",
      "hello sir what can i help you with",
      "hello maam how can i help you",
      "greetings sir what may i assist you with today",
      "good day madam how could i assist you today"}},
    // on_it
    {{"i'm on your request",
      "be right back with your reservation",
      "i'm processing the request",
      "give me a second for processing the reservation",
      "excellent sir i will start the request now",
      "thank you madam i shall start the reservation now"}},
    // ask_cuisine
    {{"what food are you looking for",
      "what food are you looking for",
      "what type of cuisine would you like to eat",
      "what type of cuisine would you like to eat",
      "may i know your preference on the type of cuisine",
      "could you tell me your preference on the type of cuisine"}},
    // ask_location
    {{"where should it be",
      "where should it be",
      "where should it be located",
      "where should it be located",
      "may i know where the restaurant should be located",
      "could you tell me where the restaurant should be located"}},
    // ask_price
    {{"what should the price be",
      "what should the price be",
      "which price range are you looking for",
      "which price range are you looking for",
      "may i know your prefered price range",
      "would you mind telling me your price range"}},
    // ask_party
    {{"how many are you",
      "how many are you",
      "how many people would be in your party",
      "how many people would be in your party",
      "may i know how many guests will be at your table",
      "would you mind telling me how many guests shall be at your table"}},
    // api_call
    {{"api_call {cuisine} {location} {party} {price}",
      "api_call {cuisine} {location} {party} {price}",
      "api_call {cuisine} {location} {party} {price}",
      "api_call {cuisine} {location} {party} {price}",
      "api_call {cuisine} {location} {party} {price}",
      "api_call {cuisine} {location} {party} {price}"}},
    // ask_update
    {{"cool anything else you want to update",
      "awesome is there any other update",
      "great is there anything else to modify",
      "great is there any other thing to modify",
      "i will modify your request is there anything else to change",
      "i shall modify your reservation is there any other change"}},
    // searching
    {{"ok looking for options",
      "sure finding some options",
      "ok sir i'm looking for options for you",
      "sure maam i'm finding some options for you",
      "excellent sir please give me a moment to provide you with options",
      "thank you madam i shall provide you with options shortly"}},
    // propose
    {{"is this one cool: {restaurant}",
      "how about this one: {restaurant}",
      "is this a good option: {restaurant}",
      "what do you think of this option: {restaurant}",
      "may i suggest this option: {restaurant}",
      "would you consider this option: {restaurant}"}},
    // find_another
    {{"ok looking for something else",
      "sure finding something else",
      "ok i'll look for a better option",
      "sure i'll find a better option",
      "yes sir i will look for another suitable option",
      "yes maam i shall find another suitable option"}},
    // here_is
    {{"here you go {info}",
      "here you go {info}",
      "here it is {info}",
      "here it is {info}",
      "here is the information you asked for {info}",
      "here is the information you asked for {info}"}},
    // anything_else
    {{"want anything else",
      "need something else",
      "is there anything i can help you with",
      "can i assist you with something else",
      "may i help you in any other way sir",
      "could i assist you in some other manner madam"}},
    // reserve
    {{"cool its done",
      "awesome you are done",
      "great i'll finalize the request",
      "great let me do the reservation",
      "excellent i will finalize your request",
      "thank you i shall finish your reservation"}},
    // welcome
    {{"no problem",
      "happy to help",
      "you're welcome",
      "you're welcome",
      "it was a pleasure to be of help to you sir",
      "i am grateful to assist you madam"}},
}};

}  // namespace

const std::string& bot_template_text(BotTemplate t, int style) {
  if (style < 0 || style >= kStyleCount)
    throw CorpusError("bot_template_text: bad style index");
  return kTable[static_cast<int>(t)][style];
}

std::string render_bot_utterance(BotTemplate t, int style,
                                 const std::map<std::string, std::string>& slots) {
  const std::string& text = bot_template_text(t, style);
  std::string out;
  out.reserve(text.size() + 32);
  for (std::size_t i = 0; i < text.size();) {
    if (text[i] == '{') {
      auto end = text.find('}', i);
      if (end == std::string::npos)
        throw CorpusError("render_bot_utterance: unterminated slot in template");
      std::string key = text.substr(i + 1, end - i - 1);
      auto it = slots.find(key);
      if (it == slots.end())
        throw CorpusError("render_bot_utterance: unbound slot {" + key + "}");
      out += it->second;
      i = end + 1;
    } else {
      out += text[i++];
    }
  }
  return out;
}

}  // namespace pdlg
