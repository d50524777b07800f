#include "pdlg/simulator.hpp"

#include <algorithm>

#include "pdlg/error.hpp"

namespace pdlg {

namespace {

constexpr std::array<Field, 4> kFieldOrder = {Field::cuisine, Field::location,
                                              Field::party, Field::price};

int field_value_of(const Restaurant& r, Field f) {
  switch (f) {
    case Field::cuisine: return r.cuisine;
    case Field::location: return r.location;
    case Field::party: return r.party;
    default: return r.price;
  }
}

BotTemplate question_for(Field f) {
  switch (f) {
    case Field::cuisine: return BotTemplate::ask_cuisine;
    case Field::location: return BotTemplate::ask_location;
    case Field::party: return BotTemplate::ask_party;
    default: return BotTemplate::ask_price;
  }
}

FieldPhrase make_phrase(const OpeningChoices& o, Field f, int value) {
  FieldPhrase p;
  p.field = f;
  p.value = value;
  p.form = f == Field::cuisine ? o.cuisine_form
         : f == Field::party   ? o.party_form
                               : 0;
  return p;
}

void add_exchange(Dialog& d, std::string user, std::string bot) {
  DialogLine l;
  l.kind = LineKind::exchange;
  l.user = std::move(user);
  l.bot = std::move(bot);
  d.lines.push_back(std::move(l));
}

void add_facts(Dialog& d, const KbConfig& c, const Restaurant& r) {
  for (const auto& f : kb_facts(c, r)) {
    DialogLine l;
    l.kind = LineKind::fact;
    l.text = f.name + " " + f.rel + " " + f.value;
    d.lines.push_back(std::move(l));
  }
}

std::string api_call_text(const KbConfig& c, int cuisine, int location,
                          int price, int party) {
  return render_bot_utterance(BotTemplate::api_call, 0,
                              {{"cuisine", c.cuisines[cuisine]},
                               {"location", c.locations[location]},
                               {"party", c.parties[party]},
                               {"price", c.prices[price]}});
}

std::string contact_payload(const Restaurant& r, const Profile& p) {
  return p.age == Age::young ? r.name + "_social_media" : r.name + "_phone";
}

std::string directions_payload(const KbConfig& c, const Restaurant& r) {
  bool cheap = c.prices[r.price] == "cheap";
  return r.name + "_address " + r.name +
         (cheap ? "_public_transport" : "_parking");
}

// greeting + request + slot questions + searching announcement
void render_opening(Dialog& d, const KbConfig& c, const Scenario& sc,
                    const Restaurant& target, int style) {
  const OpeningChoices& o = sc.open;
  add_exchange(d, render_greet(o.greet_form),
               render_bot_utterance(BotTemplate::greet, style, {}));
  std::vector<FieldPhrase> mentioned;
  for (Field f : o.request_fields)
    mentioned.push_back(make_phrase(o, f, field_value_of(target, f)));
  add_exchange(d, render_request(c, o.request_base, mentioned),
               render_bot_utterance(BotTemplate::on_it, style, {}));
  std::vector<Field> missing;
  for (Field f : kFieldOrder)
    if (std::find(o.request_fields.begin(), o.request_fields.end(), f) ==
        o.request_fields.end())
      missing.push_back(f);
  std::string pending_user = kSilenceToken;
  for (Field f : missing) {
    add_exchange(d, pending_user,
                 render_bot_utterance(question_for(f), style, {}));
    pending_user = render_answer(c, f, field_value_of(target, f),
                                 o.answer_form[static_cast<int>(f)]);
  }
  add_exchange(d, pending_user,
               render_bot_utterance(BotTemplate::searching, style, {}));
}

// proposal loop; returns the accepted restaurant
const Restaurant* render_proposals(Dialog& d,
                                   const std::vector<const Restaurant*>& ranked,
                                   int style, Rng& coin_rng) {
  for (std::size_t i = 0; i < ranked.size(); ++i) {
    add_exchange(d, kSilenceToken,
                 render_bot_utterance(BotTemplate::propose, style,
                                      {{"restaurant", ranked[i]->name}}));
    bool last = i + 1 == ranked.size();
    bool accept = last || coin_rng.bernoulli(0.25);
    if (accept) {
      add_exchange(d, render_accept(static_cast<int>(coin_rng.below(accept_forms()))),
                   render_bot_utterance(BotTemplate::reserve, style, {}));
      return ranked[i];
    }
    add_exchange(d, render_reject(static_cast<int>(coin_rng.below(reject_forms()))),
                 render_bot_utterance(BotTemplate::find_another, style, {}));
  }
  throw CorpusError("render_proposals: empty ranked list");
}

void render_info_phase(Dialog& d, const KbConfig& c, const InfoChoices& info,
                       const Restaurant& r, const Profile& p, int style) {
  auto ask_contact_x = [&]() {
    add_exchange(d, render_ask_contact(info.contact_form),
                 render_bot_utterance(BotTemplate::here_is, style,
                                      {{"info", contact_payload(r, p)}}));
  };
  auto ask_directions_x = [&]() {
    add_exchange(d, render_ask_directions(info.directions_form),
                 render_bot_utterance(BotTemplate::here_is, style,
                                      {{"info", directions_payload(c, r)}}));
  };
  if (info.kind == 0) {
    ask_directions_x();
  } else if (info.kind == 1) {
    ask_contact_x();
  } else if (info.contact_first) {
    ask_contact_x();
    ask_directions_x();
  } else {
    ask_directions_x();
    ask_contact_x();
  }
  add_exchange(d, render_thanks(info.thanks_form),
               render_bot_utterance(BotTemplate::welcome, style, {}));
}

void add_profile_line(Dialog& d, TaskId task, const Profile& p, bool all_attrs) {
  DialogLine l;
  l.kind = LineKind::profile;
  bool full = all_attrs || task == TaskId::pt3 || task == TaskId::pt5;
  l.text = full ? profile_line_full(p) : profile_line_short(p);
  d.lines.push_back(std::move(l));
}

}  // namespace

TaskId task_from_int(int n) {
  if (n < 1 || n > 5) throw CorpusError("task id must be 1..5");
  return static_cast<TaskId>(n);
}

Scenario draw_scenario(TaskId task, const KnowledgeBase& kb, int half, Rng rng) {
  const KbConfig& c = kb.config;
  Scenario sc;
  sc.task = task;
  sc.half = half;
  sc.target = static_cast<int>(rng.below(static_cast<std::uint32_t>(kb.half(half).size())));
  const Restaurant& target = kb.half(half)[sc.target];
  sc.favorite_idx = static_cast<int>(
      rng.below(static_cast<std::uint32_t>(c.dishes.at(c.cuisines[target.cuisine]).size())));
  sc.aux_diet = static_cast<int>(rng.below(2));

  sc.open.greet_form =
      static_cast<int>(rng.below(static_cast<std::uint32_t>(greet_forms())));
  if (task != TaskId::pt4) {
    OpeningChoices& o = sc.open;
    o.request_base = static_cast<int>(rng.below(static_cast<std::uint32_t>(request_bases())));
    int k = static_cast<int>(rng.below(5));
    std::vector<Field> perm(kFieldOrder.begin(), kFieldOrder.end());
    rng.shuffle(perm);
    o.request_fields.assign(perm.begin(), perm.begin() + k);
    for (int f = 0; f < kFieldCount; ++f)
      o.answer_form[f] = static_cast<int>(
          rng.below(static_cast<std::uint32_t>(answer_forms(static_cast<Field>(f)))));
    o.cuisine_form = static_cast<int>(rng.below(2));
    o.party_form = static_cast<int>(rng.below(2));
  }

  if (task == TaskId::pt2) {
    int rounds = 1 + static_cast<int>(rng.below(4));
    std::array<int, 4> cur = {target.cuisine, target.location, target.party,
                              target.price};
    auto options_for = [&](Field f) {
      switch (f) {
        case Field::cuisine: return c.half_cuisines(half);
        case Field::location: return c.half_locations(half);
        case Field::party: {
          std::vector<int> v(c.parties.size());
          for (int i = 0; i < static_cast<int>(v.size()); ++i) v[i] = i;
          return v;
        }
        default: {
          std::vector<int> v(c.prices.size());
          for (int i = 0; i < static_cast<int>(v.size()); ++i) v[i] = i;
          return v;
        }
      }
    };
    for (int u = 0; u < rounds; ++u) {
      UpdateChoice up;
      up.field = kFieldOrder[rng.below(4)];
      auto opts = options_for(up.field);
      opts.erase(std::remove(opts.begin(), opts.end(),
                             cur[static_cast<int>(up.field)]),
                 opts.end());
      up.value = opts[rng.below(static_cast<std::uint32_t>(opts.size()))];
      up.form = static_cast<int>(rng.below(static_cast<std::uint32_t>(update_forms())));
      if (up.field == Field::cuisine) up.cuisine_form = static_cast<int>(rng.below(2));
      if (up.field == Field::party) up.party_form = static_cast<int>(rng.below(2));
      cur[static_cast<int>(up.field)] = up.value;
      sc.updates.push_back(up);
    }
    sc.no_form = static_cast<int>(rng.below(static_cast<std::uint32_t>(no_forms())));
  }

  if (task == TaskId::pt4) {
    sc.book_base = static_cast<int>(rng.below(static_cast<std::uint32_t>(book_bases())));
  }
  if (task == TaskId::pt4 || task == TaskId::pt5) {
    int r = static_cast<int>(rng.below(4));  // .25 directions / .25 contact / .5 both
    sc.info.kind = r <= 1 ? r : 2;
    sc.info.contact_first = rng.below(2) == 0;
    sc.info.contact_form =
        static_cast<int>(rng.below(static_cast<std::uint32_t>(ask_contact_forms())));
    sc.info.directions_form =
        static_cast<int>(rng.below(static_cast<std::uint32_t>(ask_directions_forms())));
    sc.info.thanks_form =
        static_cast<int>(rng.below(static_cast<std::uint32_t>(thanks_forms())));
  }
  return sc;
}

int profile_combos(TaskId task) {
  return (task == TaskId::pt3 || task == TaskId::pt5) ? 12 : 6;
}

Profile combo_profile(const KnowledgeBase& kb, const Scenario& sc, int combo) {
  const KbConfig& c = kb.config;
  const Restaurant& target = kb.half(sc.half)[sc.target];
  Profile p;
  int ga = combo % 6;
  p.gender = static_cast<Gender>(ga % 2);
  p.age = static_cast<Age>(ga / 2);
  if (sc.task == TaskId::pt3 || sc.task == TaskId::pt5)
    p.diet = static_cast<Diet>(combo / 6);
  else
    p.diet = static_cast<Diet>(sc.aux_diet);
  p.favorite = c.dishes.at(c.cuisines[target.cuisine])[sc.favorite_idx];
  return p;
}

Dialog render_dialog(const KnowledgeBase& kb, const Scenario& sc,
                     const Profile& profile, Rng profile_rng, bool all_attrs) {
  const KbConfig& c = kb.config;
  const Restaurant& target = kb.half(sc.half)[sc.target];
  if (sc.task == TaskId::pt3 || sc.task == TaskId::pt5) {
    const auto& dl = c.dishes.at(c.cuisines[target.cuisine]);
    if (std::find(dl.begin(), dl.end(), profile.favorite) == dl.end())
      throw CorpusError("render_dialog: favorite not in the dialog cuisine's dishes");
  }
  int style = style_index(profile.gender, profile.age);
  Dialog d;
  add_profile_line(d, sc.task, profile, all_attrs);

  switch (sc.task) {
    case TaskId::pt1: {
      render_opening(d, c, sc, target, style);
      add_exchange(d, kSilenceToken,
                   api_call_text(c, target.cuisine, target.location,
                                 target.price, target.party));
      break;
    }
    case TaskId::pt2: {
      render_opening(d, c, sc, target, style);
      add_exchange(d, kSilenceToken,
                   api_call_text(c, target.cuisine, target.location,
                                 target.price, target.party));
      std::array<int, 4> cur = {target.cuisine, target.location, target.party,
                                target.price};
      for (const auto& up : sc.updates) {
        FieldPhrase ph;
        ph.field = up.field;
        ph.value = up.value;
        ph.form = up.field == Field::cuisine ? up.cuisine_form
                : up.field == Field::party   ? up.party_form
                                             : 0;
        add_exchange(d, render_update(c, up.form, ph),
                     render_bot_utterance(BotTemplate::ask_update, style, {}));
        cur[static_cast<int>(up.field)] = up.value;
      }
      add_exchange(d, render_no(sc.no_form),
                   render_bot_utterance(BotTemplate::searching, style, {}));
      add_exchange(d, kSilenceToken,
                   api_call_text(c, cur[0], cur[1], cur[3], cur[2]));
      break;
    }
    case TaskId::pt3: {
      auto result = api_call_lookup(kb, sc.half, target.cuisine, target.location,
                                    target.price, target.party);
      if (result.empty()) throw CorpusError("pt3: empty lookup result");
      for (const Restaurant* r : result) add_facts(d, c, *r);
      render_opening(d, c, sc, target, style);
      auto ranked = rank_for_profile(c, result, profile);
      render_proposals(d, ranked, style, profile_rng);
      break;
    }
    case TaskId::pt4: {
      add_facts(d, c, target);
      add_exchange(d, render_greet(sc.open.greet_form),
                   render_bot_utterance(BotTemplate::greet, style, {}));
      add_exchange(d, render_book(sc.book_base, target.name),
                   render_bot_utterance(BotTemplate::reserve, style, {}));
      render_info_phase(d, c, sc.info, target, profile, style);
      break;
    }
    case TaskId::pt5: {
      render_opening(d, c, sc, target, style);
      add_exchange(d, kSilenceToken,
                   api_call_text(c, target.cuisine, target.location,
                                 target.price, target.party));
      auto result = api_call_lookup(kb, sc.half, target.cuisine, target.location,
                                    target.price, target.party);
      if (result.empty()) throw CorpusError("pt5: empty lookup result");
      for (const Restaurant* r : result) add_facts(d, c, *r);
      auto ranked = rank_for_profile(c, result, profile);
      const Restaurant* accepted = render_proposals(d, ranked, style, profile_rng);
      render_info_phase(d, c, sc.info, *accepted, profile, style);
      break;
    }
  }
  return d;
}

Dialog gen_task(TaskId task, Rng rng, const KnowledgeBase& kb, int half,
                const Profile& profile) {
  Scenario sc = draw_scenario(task, kb, half, rng.child("scenario"));
  Profile p = profile;
  if (task == TaskId::pt3 || task == TaskId::pt5) {
    const KbConfig& c = kb.config;
    const Restaurant& target = kb.half(half)[sc.target];
    p.favorite = c.dishes.at(c.cuisines[target.cuisine])[sc.favorite_idx];
  }
  return render_dialog(kb, sc, p, rng.child("render"));
}

}  // namespace pdlg
