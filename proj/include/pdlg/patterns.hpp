#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pdlg/kb.hpp"

namespace pdlg {

enum class Field { cuisine = 0, location, party, price };
constexpr int kFieldCount = 4;
const char* field_name(Field f);

// a rendered mention of one query field, e.g. "with spanish food" or "for two
// people"; form selects between surface variants where a field has several
struct FieldPhrase {
  Field field = Field::cuisine;
  int value = 0;  // index into the config list for that field
  int form = 0;
};

int field_phrase_forms(Field f);

struct Intent {
  enum class Kind {
    greet,
    request,   // reservation request carrying 0..4 field phrases
    answer,    // answer to a slot question, exactly one field
    update,    // change one field
    reject,
    accept,
    book,      // direct reservation at a named restaurant
    ask_contact,
    ask_directions,
    thanks,
    no,
    silence,
  };
  Kind kind = Kind::silence;
  std::vector<FieldPhrase> fields;
  std::string restaurant;
};

// token -> field/value for the closed slot lexicon (both KB halves)
struct Lexicon {
  std::map<std::string, std::pair<Field, int>> values;
  static Lexicon from_config(const KbConfig& c);
};

inline const char* kSilenceToken = "<SILENCE>";

// surface form counts per pattern family
int greet_forms();
int request_bases();
int answer_forms(Field f);
int update_forms();
int reject_forms();
int accept_forms();
int book_bases();
int ask_contact_forms();
int ask_directions_forms();
int thanks_forms();
int no_forms();
int user_pattern_count();  // total distinct patterns incl. <SILENCE>

std::string render_field_phrase(const KbConfig& c, const FieldPhrase& p);
std::string render_greet(int form);
std::string render_request(const KbConfig& c, int base,
                           const std::vector<FieldPhrase>& fields);
std::string render_answer(const KbConfig& c, Field f, int value, int form);
std::string render_update(const KbConfig& c, int form, const FieldPhrase& p);
std::string render_reject(int form);
std::string render_accept(int form);
std::string render_book(int base, const std::string& restaurant);
std::string render_ask_contact(int form);
std::string render_ask_directions(int form);
std::string render_thanks(int form);
std::string render_no(int form);

// exact pattern match over the closed lexicon; throws CorpusError on input
// matching no pattern
Intent parse_user_utterance(const std::string& text, const Lexicon& lex);

std::vector<std::string> split_tokens(const std::string& text);

}  // namespace pdlg
