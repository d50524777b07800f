#include "pdlg/oracle.hpp"

#include <algorithm>
#include <map>

#include "pdlg/error.hpp"
#include "pdlg/templates.hpp"

namespace pdlg {

namespace {

constexpr std::array<Field, 4> kFieldOrder = {Field::cuisine, Field::location,
                                              Field::party, Field::price};

struct FactView {
  int rating = -1;
  std::string type, speciality, phone, social, address, parking, transport,
      price;
};

// group the visible facts by restaurant, in first-appearance order
std::vector<std::pair<std::string, FactView>> collect_restaurants(
    const std::vector<VisibleFact>& facts) {
  std::vector<std::pair<std::string, FactView>> out;
  std::map<std::string, std::size_t> pos;
  for (const auto& f : facts) {
    auto it = pos.find(f.name);
    if (it == pos.end()) {
      pos.emplace(f.name, out.size());
      out.push_back({f.name, {}});
      it = pos.find(f.name);
    }
    FactView& v = out[it->second].second;
    if (f.rel == "R_rating") v.rating = std::stoi(f.value);
    else if (f.rel == "R_type") v.type = f.value;
    else if (f.rel == "R_speciality") v.speciality = f.value;
    else if (f.rel == "R_phone") v.phone = f.value;
    else if (f.rel == "R_social_media") v.social = f.value;
    else if (f.rel == "R_address") v.address = f.value;
    else if (f.rel == "R_parking") v.parking = f.value;
    else if (f.rel == "R_public_transport") v.transport = f.value;
    else if (f.rel == "R_price") v.price = f.value;
  }
  return out;
}

FactView facts_of(const std::vector<VisibleFact>& facts,
                  const std::string& name) {
  for (const auto& [n, v] : collect_restaurants(facts))
    if (n == name) return v;
  throw CorpusError("oracle: no visible facts for restaurant " + name);
}

int score2_view(const FactView& v, const Profile& p) {
  if (v.rating < 0) throw CorpusError("oracle: restaurant facts lack R_rating");
  int s = 2 * v.rating;
  if ((p.diet == Diet::veg) == (v.type == "veg")) s += 16;
  if (v.speciality == p.favorite) s += 5;
  return s;
}

std::vector<std::string> rank_proposals(const std::vector<VisibleFact>& facts,
                                        const Profile& p) {
  auto views = collect_restaurants(facts);
  std::stable_sort(views.begin(), views.end(), [&](const auto& a, const auto& b) {
    int sa = score2_view(a.second, p), sb = score2_view(b.second, p);
    if (sa != sb) return sa > sb;
    if (a.second.rating != b.second.rating) return a.second.rating > b.second.rating;
    if (a.second.type != b.second.type) return a.second.type == "veg";
    return a.first < b.first;
  });
  std::vector<std::string> out;
  out.reserve(views.size());
  for (auto& [n, v] : views) out.push_back(n);
  return out;
}

}  // namespace

VisibleFact parse_fact_line(const std::string& text) {
  auto toks = split_tokens(text);
  if (toks.size() != 3)
    throw CorpusError("bad fact line (want 3 tokens): " + text);
  bool known = std::find_if(kKbRelations.begin(), kKbRelations.end(),
                            [&](const char* r) { return toks[1] == r; }) !=
               kKbRelations.end();
  if (!known) throw CorpusError("unknown relation in fact line: " + text);
  return {toks[0], toks[1], toks[2]};
}

Profile parse_profile_line(const std::string& text, const KbConfig& config) {
  auto toks = split_tokens(text);
  if (toks.size() != 2 && toks.size() != 4)
    throw CorpusError("bad profile line: " + text);
  Profile p;
  if (toks[0] == "male") p.gender = Gender::male;
  else if (toks[0] == "female") p.gender = Gender::female;
  else throw CorpusError("bad gender token: " + toks[0]);
  if (toks[1] == "young") p.age = Age::young;
  else if (toks[1] == "middle-aged") p.age = Age::middle_aged;
  else if (toks[1] == "elderly") p.age = Age::elderly;
  else throw CorpusError("bad age token: " + toks[1]);
  if (toks.size() == 4) {
    if (toks[2] == "veg") p.diet = Diet::veg;
    else if (toks[2] == "non-veg") p.diet = Diet::non_veg;
    else throw CorpusError("bad diet token: " + toks[2]);
    bool known_dish = false;
    for (const auto& [cu, dishes] : config.dishes)
      known_dish |= std::find(dishes.begin(), dishes.end(), toks[3]) != dishes.end();
    if (!known_dish) throw CorpusError("unknown favorite dish: " + toks[3]);
    p.favorite = toks[3];
  }
  return p;
}

Oracle::Oracle(const KbConfig& config)
    : config_(config), lex_(Lexicon::from_config(config)) {}

std::pair<std::string, OracleState> Oracle::step(
    const OracleState& state, const Profile& profile,
    const std::string& user_text,
    const std::vector<VisibleFact>& visible_facts) const {
  using Phase = OracleState::Phase;
  OracleState s = state;
  int style = style_index(profile.gender, profile.age);
  Intent intent = parse_user_utterance(user_text, lex_);
  auto bot = [&](BotTemplate t,
                 std::map<std::string, std::string> slots = {}) {
    return std::make_pair(render_bot_utterance(t, style, slots), s);
  };
  auto first_missing = [&]() -> std::optional<Field> {
    for (Field f : kFieldOrder)
      if (!s.slots[static_cast<int>(f)]) return f;
    return std::nullopt;
  };
  auto question_for = [](Field f) {
    switch (f) {
      case Field::cuisine: return BotTemplate::ask_cuisine;
      case Field::location: return BotTemplate::ask_location;
      case Field::party: return BotTemplate::ask_party;
      default: return BotTemplate::ask_price;
    }
  };
  auto api_call = [&]() {
    for (Field f : kFieldOrder)
      if (!s.slots[static_cast<int>(f)])
        throw CorpusError("oracle: api_call with unfilled slot");
    s.api_called = true;
    s.searching_announced = false;
    s.phase = Phase::awaiting_update;
    return bot(BotTemplate::api_call,
               {{"cuisine", config_.cuisines[*s.slots[0]]},
                {"location", config_.locations[*s.slots[1]]},
                {"party", config_.parties[*s.slots[2]]},
                {"price", config_.prices[*s.slots[3]]}});
  };
  auto start_display = [&]() {
    s.proposals = rank_proposals(visible_facts, profile);
    if (s.proposals.empty())
      throw CorpusError("oracle: display phase with no visible restaurants");
    s.cursor = 0;
    s.phase = Phase::displaying;
    return bot(BotTemplate::propose, {{"restaurant", s.proposals[0]}});
  };

  switch (intent.kind) {
    case Intent::Kind::greet:
      if (s.phase != Phase::slot_filling || s.greeted)
        throw CorpusError("oracle: unexpected greeting");
      s.greeted = true;
      return bot(BotTemplate::greet);

    case Intent::Kind::request:
      if (s.phase != Phase::slot_filling)
        throw CorpusError("oracle: unexpected reservation request");
      for (const auto& f : intent.fields)
        s.slots[static_cast<int>(f.field)] = f.value;
      s.request_seen = true;
      return bot(BotTemplate::on_it);

    case Intent::Kind::book:
      if (s.phase != Phase::slot_filling)
        throw CorpusError("oracle: unexpected direct booking");
      s.booked = intent.restaurant;
      s.phase = Phase::info;
      return bot(BotTemplate::reserve);

    case Intent::Kind::answer: {
      if (s.phase != Phase::slot_filling || !s.request_seen)
        throw CorpusError("oracle: unexpected slot answer");
      const auto& f = intent.fields.at(0);
      s.slots[static_cast<int>(f.field)] = f.value;
      if (auto m = first_missing()) return bot(question_for(*m));
      s.searching_announced = true;
      return bot(BotTemplate::searching);
    }

    case Intent::Kind::silence:
      if (s.phase == Phase::slot_filling) {
        if (!s.request_seen)
          throw CorpusError("oracle: silence before any request");
        if (auto m = first_missing()) return bot(question_for(*m));
        if (!s.searching_announced) {
          s.searching_announced = true;
          return bot(BotTemplate::searching);
        }
        // announced and all slots filled: either the KB results are already
        // on display (facts precede the conversation) or we must query
        if (!visible_facts.empty()) return start_display();
        return api_call();
      }
      if (s.phase == Phase::awaiting_update) {
        if (!visible_facts.empty()) return start_display();
        if (s.searching_announced) return api_call();
        throw CorpusError("oracle: silence with nothing pending");
      }
      if (s.phase == Phase::displaying) {
        if (s.cursor >= s.proposals.size())
          throw CorpusError("oracle: no proposals left");
        return bot(BotTemplate::propose, {{"restaurant", s.proposals[s.cursor]}});
      }
      throw CorpusError("oracle: unexpected silence");

    case Intent::Kind::update: {
      if (s.phase != Phase::awaiting_update)
        throw CorpusError("oracle: update outside update phase");
      const auto& f = intent.fields.at(0);
      s.slots[static_cast<int>(f.field)] = f.value;
      return bot(BotTemplate::ask_update);
    }

    case Intent::Kind::no:
      if (s.phase != Phase::awaiting_update)
        throw CorpusError("oracle: unexpected 'no'");
      s.searching_announced = true;
      return bot(BotTemplate::searching);

    case Intent::Kind::reject:
      if (s.phase != Phase::displaying)
        throw CorpusError("oracle: rejection outside display phase");
      ++s.cursor;
      if (s.cursor >= s.proposals.size())
        throw CorpusError("oracle: rejected the last option");
      return bot(BotTemplate::find_another);

    case Intent::Kind::accept:
      if (s.phase != Phase::displaying || s.cursor >= s.proposals.size())
        throw CorpusError("oracle: acceptance outside display phase");
      s.booked = s.proposals[s.cursor];
      s.phase = Phase::info;
      return bot(BotTemplate::reserve);

    case Intent::Kind::ask_contact: {
      if (s.phase != Phase::info)
        throw CorpusError("oracle: contact request outside info phase");
      FactView v = facts_of(visible_facts, s.booked);
      return bot(BotTemplate::here_is,
                 {{"info", profile.age == Age::young ? v.social : v.phone}});
    }

    case Intent::Kind::ask_directions: {
      if (s.phase != Phase::info)
        throw CorpusError("oracle: directions request outside info phase");
      FactView v = facts_of(visible_facts, s.booked);
      std::string payload =
          v.address + " " + (v.price == "cheap" ? v.transport : v.parking);
      return bot(BotTemplate::here_is, {{"info", payload}});
    }

    case Intent::Kind::thanks:
      if (s.phase != Phase::info)
        throw CorpusError("oracle: thanks outside info phase");
      s.phase = Phase::closed;
      return bot(BotTemplate::welcome);
  }
  throw CorpusError("oracle: unhandled intent");
}

int Oracle::rank(const OracleState& state, const Profile& profile,
                 const std::string& user_text,
                 const std::vector<VisibleFact>& visible_facts,
                 const CandidateSet& candidates) const {
  return candidates.id_of(step(state, profile, user_text, visible_facts).first);
}

VerifyResult verify_corpus_file(const Oracle& oracle, const std::string& path) {
  VerifyResult res;
  for_each_dialog(path, [&](Dialog&& d) {
    ++res.dialogs;
    Profile profile = parse_profile_line(d.lines.at(0).text, oracle.config());
    OracleState state;
    std::vector<VisibleFact> facts;
    for (std::size_t i = 1; i < d.lines.size(); ++i) {
      const auto& l = d.lines[i];
      if (l.kind == LineKind::fact) {
        facts.push_back(parse_fact_line(l.text));
        continue;
      }
      ++res.exchanges;
      auto [bot, next] = oracle.step(state, profile, l.user, facts);
      state = std::move(next);
      if (bot != l.bot) {
        ++res.mismatches;
        if (res.first_mismatch.empty())
          res.first_mismatch = path + ": dialog " + std::to_string(res.dialogs) +
                               " line " + std::to_string(i + 1) + ": expected \"" +
                               l.bot + "\", oracle said \"" + bot + "\"";
      }
    }
  });
  return res;
}

}  // namespace pdlg
