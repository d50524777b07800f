#include "pdlg/patterns.hpp"

#include <array>
#include <sstream>

#include "pdlg/error.hpp"

namespace pdlg {

namespace {

const std::array<std::string, 4> kGreets = {"hi", "hello", "good morning",
                                            "hey there"};
const std::array<std::string, 4> kRequestBases = {
    "may i have a table",
    "can you make a restaurant reservation",
    "can you book a table",
    "i'd like to book a table",
};
// request bases that also work with a trailing "at <restaurant>"
const std::array<int, 3> kBookBases = {1, 2, 3};
const std::array<std::string, 2> kRejects = {
    "no i don't like that",
    "no this does not work for me",
};
const std::array<std::string, 3> kAccepts = {
    "let's do it",
    "i love that",
    "that one sounds great",
};
const std::array<std::string, 3> kAskContact = {
    "may i have the contact details of the restaurant",
    "can you provide me the contact details of the restaurant",
    "what is the contact information of the restaurant",
};
const std::array<std::string, 3> kAskDirections = {
    "can you provide me the directions to the restaurant",
    "may i have the directions to the restaurant",
    "how do i get to the restaurant",
};
const std::array<std::string, 3> kThanks = {"thanks", "thank you",
                                            "thank you so much"};
const std::array<std::string, 2> kNos = {"no", "no thank you"};
const std::array<std::string, 3> kUpdatePrefixes = {
    "actually i would prefer",
    "instead could it be",
    "can you change it to",
};

std::string join(const std::vector<std::string>& toks, std::size_t b, std::size_t e) {
  std::string out;
  for (std::size_t i = b; i < e; ++i) {
    if (i > b) out += ' ';
    out += toks[i];
  }
  return out;
}

const std::string& value_token(const KbConfig& c, Field f, int v) {
  switch (f) {
    case Field::cuisine: return c.cuisines[v];
    case Field::location: return c.locations[v];
    case Field::party: return c.parties[v];
    default: return c.prices[v];
  }
}

std::optional<std::pair<Field, int>> lookup(const Lexicon& lex,
                                            const std::string& tok) {
  auto it = lex.values.find(tok);
  if (it == lex.values.end()) return std::nullopt;
  return it->second;
}

bool is_value(const Lexicon& lex, const std::string& tok, Field f) {
  auto v = lookup(lex, tok);
  return v && v->first == f;
}

int value_id(const Lexicon& lex, const std::string& tok) {
  return lex.values.at(tok).second;
}

// matches one field phrase starting at i; advances i past it on success
bool match_field_phrase(const std::vector<std::string>& t, std::size_t& i,
                        const Lexicon& lex, FieldPhrase& out) {
  std::size_t n = t.size();
  if (i + 2 < n && t[i] == "with" && is_value(lex, t[i + 1], Field::cuisine) &&
      (t[i + 2] == "food" || t[i + 2] == "cuisine")) {
    out = {Field::cuisine, value_id(lex, t[i + 1]), t[i + 2] == "food" ? 0 : 1};
    i += 3;
    return true;
  }
  if (i + 4 < n && t[i] == "in" && t[i + 1] == "a" &&
      is_value(lex, t[i + 2], Field::price) && t[i + 3] == "price" &&
      t[i + 4] == "range") {
    out = {Field::price, value_id(lex, t[i + 2]), 0};
    i += 5;
    return true;
  }
  if (i + 1 < n && t[i] == "in" && is_value(lex, t[i + 1], Field::location)) {
    out = {Field::location, value_id(lex, t[i + 1]), 0};
    i += 2;
    return true;
  }
  if (i + 1 < n && t[i] == "for" && is_value(lex, t[i + 1], Field::party)) {
    int form = 0;
    std::size_t next = i + 2;
    if (next < n && t[next] == "people") {
      form = 1;
      ++next;
    }
    out = {Field::party, value_id(lex, t[i + 1]), form};
    i = next;
    return true;
  }
  return false;
}

bool match_prefix(const std::vector<std::string>& t, const std::string& prefix,
                  std::size_t& i) {
  auto p = split_tokens(prefix);
  if (t.size() < p.size()) return false;
  for (std::size_t k = 0; k < p.size(); ++k)
    if (t[k] != p[k]) return false;
  i = p.size();
  return true;
}

}  // namespace

const char* field_name(Field f) {
  switch (f) {
    case Field::cuisine: return "cuisine";
    case Field::location: return "location";
    case Field::party: return "party";
    default: return "price";
  }
}

int field_phrase_forms(Field f) {
  return (f == Field::cuisine || f == Field::party) ? 2 : 1;
}

Lexicon Lexicon::from_config(const KbConfig& c) {
  Lexicon lex;
  auto add = [&lex](const std::vector<std::string>& vals, Field f) {
    for (int i = 0; i < static_cast<int>(vals.size()); ++i) {
      if (!lex.values.emplace(vals[i], std::make_pair(f, i)).second)
        throw CorpusError("lexicon: ambiguous value token " + vals[i]);
    }
  };
  add(c.cuisines, Field::cuisine);
  add(c.locations, Field::location);
  add(c.parties, Field::party);
  add(c.prices, Field::price);
  return lex;
}

int greet_forms() { return kGreets.size(); }
int request_bases() { return kRequestBases.size(); }
int answer_forms(Field) { return 3; }
int update_forms() { return kUpdatePrefixes.size(); }
int reject_forms() { return kRejects.size(); }
int accept_forms() { return kAccepts.size(); }
int book_bases() { return kBookBases.size(); }
int ask_contact_forms() { return kAskContact.size(); }
int ask_directions_forms() { return kAskDirections.size(); }
int thanks_forms() { return kThanks.size(); }
int no_forms() { return kNos.size(); }

int user_pattern_count() {
  return greet_forms() + request_bases() + 4 * 3 /* answers */ +
         update_forms() + reject_forms() + accept_forms() + book_bases() +
         ask_contact_forms() + ask_directions_forms() + thanks_forms() +
         no_forms() + 1 /* <SILENCE> */;
}

std::string render_field_phrase(const KbConfig& c, const FieldPhrase& p) {
  const std::string& v = value_token(c, p.field, p.value);
  switch (p.field) {
    case Field::cuisine:
      return "with " + v + (p.form == 0 ? " food" : " cuisine");
    case Field::location:
      return "in " + v;
    case Field::party:
      return "for " + v + (p.form == 1 ? " people" : "");
    default:
      return "in a " + v + " price range";
  }
}

std::string render_greet(int form) { return kGreets.at(form); }

std::string render_request(const KbConfig& c, int base,
                           const std::vector<FieldPhrase>& fields) {
  std::string out = kRequestBases.at(base);
  for (const auto& f : fields) out += " " + render_field_phrase(c, f);
  return out;
}

std::string render_answer(const KbConfig& c, Field f, int value, int form) {
  const std::string& v = value_token(c, f, value);
  switch (f) {
    case Field::cuisine:
      if (form == 0) return "i love " + v + " food";
      if (form == 1) return "with " + v + " food";
      return "i would like " + v + " food";
    case Field::location:
      if (form == 0) return v + " please";
      if (form == 1) return "in " + v;
      return "somewhere in " + v;
    case Field::party:
      if (form == 0) return "for " + v + " please";
      if (form == 1) return "for " + v + " people please";
      return "we will be " + v;
    default:
      if (form == 0) return "in a " + v + " price range please";
      if (form == 1) return v + " please";
      return "i am looking for something " + v;
  }
}

std::string render_update(const KbConfig& c, int form, const FieldPhrase& p) {
  return kUpdatePrefixes.at(form) + " " + render_field_phrase(c, p);
}

std::string render_reject(int form) { return kRejects.at(form); }
std::string render_accept(int form) { return kAccepts.at(form); }

std::string render_book(int base, const std::string& restaurant) {
  return kRequestBases.at(kBookBases.at(base)) + " at " + restaurant;
}

std::string render_ask_contact(int form) { return kAskContact.at(form); }
std::string render_ask_directions(int form) { return kAskDirections.at(form); }
std::string render_thanks(int form) { return kThanks.at(form); }
std::string render_no(int form) { return kNos.at(form); }

std::vector<std::string> split_tokens(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

Intent parse_user_utterance(const std::string& text, const Lexicon& lex) {
  Intent intent;
  if (text == kSilenceToken) {
    intent.kind = Intent::Kind::silence;
    return intent;
  }
  auto t = split_tokens(text);
  if (t.empty()) throw CorpusError("parse: empty user utterance");

  auto exact = [&](const auto& list) {
    for (const auto& s : list)
      if (text == s) return true;
    return false;
  };
  if (exact(kGreets)) {
    intent.kind = Intent::Kind::greet;
    return intent;
  }
  if (exact(kAskContact)) {
    intent.kind = Intent::Kind::ask_contact;
    return intent;
  }
  if (exact(kAskDirections)) {
    intent.kind = Intent::Kind::ask_directions;
    return intent;
  }
  if (exact(kRejects)) {
    intent.kind = Intent::Kind::reject;
    return intent;
  }
  if (exact(kAccepts)) {
    intent.kind = Intent::Kind::accept;
    return intent;
  }
  if (exact(kThanks)) {
    intent.kind = Intent::Kind::thanks;
    return intent;
  }
  if (exact(kNos)) {
    intent.kind = Intent::Kind::no;
    return intent;
  }

  // reservation requests, with "at <restaurant>" marking a direct booking
  for (const auto& base : kRequestBases) {
    std::size_t i = 0;
    if (!match_prefix(t, base, i)) continue;
    if (i < t.size() && t[i] == "at") {
      if (i + 2 != t.size() || t[i + 1].rfind("resto_", 0) != 0) break;
      intent.kind = Intent::Kind::book;
      intent.restaurant = t[i + 1];
      return intent;
    }
    std::vector<FieldPhrase> fields;
    bool ok = true;
    while (i < t.size()) {
      FieldPhrase p;
      if (!match_field_phrase(t, i, lex, p)) {
        ok = false;
        break;
      }
      fields.push_back(p);
    }
    if (ok) {
      intent.kind = Intent::Kind::request;
      intent.fields = std::move(fields);
      return intent;
    }
    break;  // matched a base but the tail is malformed
  }

  // updates
  for (int form = 0; form < update_forms(); ++form) {
    std::size_t i = 0;
    if (!match_prefix(t, kUpdatePrefixes[form], i)) continue;
    FieldPhrase p;
    if (match_field_phrase(t, i, lex, p) && i == t.size()) {
      intent.kind = Intent::Kind::update;
      intent.fields = {p};
      return intent;
    }
    break;
  }

  // slot answers
  auto answer = [&intent](Field f, int v) {
    intent.kind = Intent::Kind::answer;
    intent.fields = {{f, v, 0}};
    return intent;
  };
  std::size_t n = t.size();
  if (n == 4 && t[0] == "i" && t[1] == "love" && t[3] == "food" &&
      is_value(lex, t[2], Field::cuisine))
    return answer(Field::cuisine, value_id(lex, t[2]));
  if (n == 3 && t[0] == "with" && t[2] == "food" &&
      is_value(lex, t[1], Field::cuisine))
    return answer(Field::cuisine, value_id(lex, t[1]));
  if (n == 5 && join(t, 0, 3) == "i would like" && t[4] == "food" &&
      is_value(lex, t[3], Field::cuisine))
    return answer(Field::cuisine, value_id(lex, t[3]));
  if (n == 2 && t[1] == "please" && is_value(lex, t[0], Field::location))
    return answer(Field::location, value_id(lex, t[0]));
  if (n == 2 && t[0] == "in" && is_value(lex, t[1], Field::location))
    return answer(Field::location, value_id(lex, t[1]));
  if (n == 3 && t[0] == "somewhere" && t[1] == "in" &&
      is_value(lex, t[2], Field::location))
    return answer(Field::location, value_id(lex, t[2]));
  if (n == 3 && t[0] == "for" && t[2] == "please" &&
      is_value(lex, t[1], Field::party))
    return answer(Field::party, value_id(lex, t[1]));
  if (n == 4 && t[0] == "for" && t[2] == "people" && t[3] == "please" &&
      is_value(lex, t[1], Field::party))
    return answer(Field::party, value_id(lex, t[1]));
  if (n == 4 && join(t, 0, 3) == "we will be" && is_value(lex, t[3], Field::party))
    return answer(Field::party, value_id(lex, t[3]));
  if (n == 6 && t[0] == "in" && t[1] == "a" && t[3] == "price" &&
      t[4] == "range" && t[5] == "please" && is_value(lex, t[2], Field::price))
    return answer(Field::price, value_id(lex, t[2]));
  if (n == 2 && t[1] == "please" && is_value(lex, t[0], Field::price))
    return answer(Field::price, value_id(lex, t[0]));
  if (n == 6 && join(t, 0, 5) == "i am looking for something" &&
      is_value(lex, t[5], Field::price))
    return answer(Field::price, value_id(lex, t[5]));

  throw CorpusError("parse: unrecognized user utterance: " + text);
}

}  // namespace pdlg
