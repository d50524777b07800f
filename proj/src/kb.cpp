#include "pdlg/kb.hpp"

#include <algorithm>
#include <fstream>
#include <set>

#include "pdlg/error.hpp"

namespace pdlg {

const char* gender_token(Gender g) {
  return g == Gender::male ? "male" : "female";
}

const char* age_token(Age a) {
  switch (a) {
    case Age::young: return "young";
    case Age::middle_aged: return "middle-aged";
    default: return "elderly";
  }
}

const char* diet_token(Diet d) { return d == Diet::veg ? "veg" : "non-veg"; }

const std::array<const char*, 12> kKbRelations = {
    "R_phone",      "R_cuisine",    "R_address", "R_location",
    "R_number",     "R_price",      "R_rating",  "R_type",
    "R_speciality", "R_social_media", "R_parking", "R_public_transport"};

KbConfig KbConfig::defaults() {
  KbConfig c;
  c.cuisines = {"british",  "cantonese", "french", "indian",  "italian",
                "japanese", "korean",    "spanish", "thai",    "vietnamese"};
  c.locations = {"bangkok", "beijing", "bombay", "hanoi", "london",
                 "madrid",  "paris",   "rome",   "seoul", "tokyo"};
  c.prices = {"cheap", "moderate", "expensive"};
  c.parties = {"two", "four", "six", "eight"};
  c.dishes = {
      {"british", {"fish_and_chips", "shepherds_pie", "roast_beef", "pudding"}},
      {"cantonese", {"dim_sum", "char_siu", "wonton_noodles", "congee"}},
      {"french", {"croissant", "ratatouille", "crepe", "baguette"}},
      {"indian", {"biryani", "curry", "naan", "samosa"}},
      {"italian", {"pizza", "pasta", "risotto", "lasagna"}},
      {"japanese", {"sushi", "ramen", "tempura", "udon"}},
      {"korean", {"bibimbap", "kimchi", "bulgogi", "tteokbokki"}},
      {"spanish", {"paella", "tapas", "gazpacho", "churros"}},
      {"thai", {"pad_thai", "green_curry", "tom_yum", "mango_sticky_rice"}},
      {"vietnamese", {"pho", "banh_mi", "spring_rolls", "bun_cha"}},
  };
  // half A: british/french/indian/italian/spanish x bombay/london/madrid/paris/rome
  c.half_a_cuisines = {0, 2, 3, 4, 7};
  c.half_a_locations = {2, 4, 5, 6, 7};
  return c;
}

void KbConfig::validate() const {
  if (cuisines.size() != 10 || locations.size() != 10)
    throw CorpusError("kb config: need exactly 10 cuisines and 10 locations");
  if (prices.empty() || parties.empty())
    throw CorpusError("kb config: empty value list");
  if (min_rating != 1 || max_rating != 8)
    throw CorpusError("kb config: rating range is fixed at 1..8");
  auto check_half = [](const std::vector<int>& idx, std::size_t n,
                       const char* what) {
    std::set<int> seen;
    for (int i : idx) {
      if (i < 0 || static_cast<std::size_t>(i) >= n || !seen.insert(i).second)
        throw CorpusError(std::string("kb config: bad half assignment for ") + what);
    }
    if (seen.empty() || seen.size() == n)
      throw CorpusError(std::string("kb config: half assignment must be a proper subset of ") + what);
  };
  check_half(half_a_cuisines, cuisines.size(), "cuisines");
  check_half(half_a_locations, locations.size(), "locations");
  for (const auto& cu : cuisines) {
    auto it = dishes.find(cu);
    if (it == dishes.end() || it->second.size() != 4)
      throw CorpusError("kb config: need a 4-dish list for " + cu);
  }
  std::set<std::string> all;
  auto uniq = [&all](const std::vector<std::string>& v) {
    for (const auto& s : v)
      if (s.empty() || !all.insert(s).second)
        throw CorpusError("kb config: duplicate or empty value token " + s);
  };
  uniq(cuisines);
  uniq(locations);
  uniq(prices);
  uniq(parties);
}

std::vector<int> KbConfig::half_cuisines(int half) const {
  std::vector<int> out;
  for (int i = 0; i < static_cast<int>(cuisines.size()); ++i) {
    bool in_a = std::find(half_a_cuisines.begin(), half_a_cuisines.end(), i) !=
                half_a_cuisines.end();
    if (in_a == (half == 0)) out.push_back(i);
  }
  return out;
}

std::vector<int> KbConfig::half_locations(int half) const {
  std::vector<int> out;
  for (int i = 0; i < static_cast<int>(locations.size()); ++i) {
    bool in_a = std::find(half_a_locations.begin(), half_a_locations.end(), i) !=
                half_a_locations.end();
    if (in_a == (half == 0)) out.push_back(i);
  }
  return out;
}

std::string restaurant_name(const KbConfig& c, const Restaurant& r) {
  return "resto_" + c.locations[r.location] + "_" + c.prices[r.price] + "_" +
         c.cuisines[r.cuisine] + "_" + std::to_string(r.rating) + "stars_" +
         std::to_string(r.veg);
}

KnowledgeBase generate_kb(const KbConfig& config, std::uint64_t seed) {
  config.validate();
  KnowledgeBase kb;
  kb.config = config;
  Rng root(seed);
  for (int h = 0; h < 2; ++h) {
    Rng hr = root.child(h == 0 ? "kb-half-a" : "kb-half-b");
    auto cuisines = config.half_cuisines(h);
    auto locations = config.half_locations(h);
    for (int loc : locations) {
      for (int cui : cuisines) {
        const auto& dish_list = config.dishes.at(config.cuisines[cui]);
        for (int price = 0; price < static_cast<int>(config.prices.size()); ++price) {
          for (int rating = config.min_rating; rating <= config.max_rating; ++rating) {
            int party = static_cast<int>(hr.below(static_cast<std::uint32_t>(config.parties.size())));
            int spec = static_cast<int>(hr.below(static_cast<std::uint32_t>(dish_list.size())));
            for (int veg = 1; veg <= 2; ++veg) {
              Restaurant r;
              r.cuisine = cui;
              r.location = loc;
              r.price = price;
              r.rating = rating;
              r.party = party;
              r.veg = veg;
              r.speciality = spec;
              r.name = restaurant_name(config, r);
              kb.halves[h].push_back(std::move(r));
            }
          }
        }
      }
    }
  }
  return kb;
}

std::vector<KbFact> kb_facts(const KbConfig& c, const Restaurant& r) {
  std::vector<KbFact> f;
  f.reserve(12);
  auto add = [&](const char* rel, std::string value) {
    f.push_back({r.name, rel, std::move(value)});
  };
  add("R_phone", r.name + "_phone");
  add("R_cuisine", c.cuisines[r.cuisine]);
  add("R_address", r.name + "_address");
  add("R_location", c.locations[r.location]);
  add("R_number", c.parties[r.party]);
  add("R_price", c.prices[r.price]);
  add("R_rating", std::to_string(r.rating));
  add("R_type", r.veg == 1 ? "veg" : "non-veg");
  add("R_speciality", c.dishes.at(c.cuisines[r.cuisine])[r.speciality]);
  add("R_social_media", r.name + "_social_media");
  add("R_parking", r.name + "_parking");
  add("R_public_transport", r.name + "_public_transport");
  return f;
}

bool result_order_less(const Restaurant& a, const Restaurant& b) {
  if (a.rating != b.rating) return a.rating > b.rating;
  if (a.veg != b.veg) return a.veg < b.veg;
  return a.name < b.name;
}

std::vector<const Restaurant*> api_call_lookup(const KnowledgeBase& kb, int half,
                                               int cuisine, int location,
                                               int price, int party) {
  std::vector<const Restaurant*> out;
  for (const auto& r : kb.half(half)) {
    if (r.cuisine == cuisine && r.location == location && r.party == party &&
        r.price == price)
      out.push_back(&r);
  }
  std::sort(out.begin(), out.end(), [](const Restaurant* a, const Restaurant* b) {
    return result_order_less(*a, *b);
  });
  return out;
}

int score2_restaurant(const KbConfig& c, const Restaurant& r, const Profile& p) {
  int s = 2 * r.rating;
  bool is_veg = r.veg == 1;
  if ((p.diet == Diet::veg) == is_veg) s += 16;
  if (c.dishes.at(c.cuisines[r.cuisine])[r.speciality] == p.favorite) s += 5;
  return s;
}

std::vector<const Restaurant*> rank_for_profile(
    const KbConfig& c, std::vector<const Restaurant*> result, const Profile& p) {
  std::stable_sort(result.begin(), result.end(),
                   [&](const Restaurant* a, const Restaurant* b) {
                     return score2_restaurant(c, *a, p) > score2_restaurant(c, *b, p);
                   });
  for (std::size_t i = 1; i < result.size(); ++i) {
    if (score2_restaurant(c, *result[i - 1], p) ==
        score2_restaurant(c, *result[i], p))
      throw CorpusError("rank_for_profile: tied personalized scores for " +
                        result[i - 1]->name + " and " + result[i]->name);
  }
  return result;
}

double score_restaurant(const KbConfig& c, const Restaurant& r, const Profile& p) {
  return score2_restaurant(c, r, p) / 2.0;
}

Profile sample_profile(const KbConfig& c, Rng& rng, int cuisine) {
  const auto& dl = c.dishes.at(c.cuisines.at(cuisine));
  if (dl.empty()) throw CorpusError("sample_profile: empty dish list");
  Profile p;
  p.gender = static_cast<Gender>(rng.below(2));
  p.age = static_cast<Age>(rng.below(3));
  p.diet = static_cast<Diet>(rng.below(2));
  p.favorite = dl[rng.below(static_cast<std::uint32_t>(dl.size()))];
  return p;
}

std::string profile_line_short(const Profile& p) {
  return std::string(gender_token(p.gender)) + " " + age_token(p.age);
}

std::string profile_line_full(const Profile& p) {
  return profile_line_short(p) + " " + diet_token(p.diet) + " " + p.favorite;
}

void write_kb_file(const KnowledgeBase& kb, int half, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw CorpusError("cannot open " + path + " for writing");
  std::vector<const Restaurant*> order;
  for (const auto& r : kb.half(half)) order.push_back(&r);
  std::sort(order.begin(), order.end(),
            [](const Restaurant* a, const Restaurant* b) { return a->name < b->name; });
  for (const Restaurant* r : order)
    for (const auto& f : kb_facts(kb.config, *r))
      out << f.name << " " << f.rel << " " << f.value << "\n";
}

}  // namespace pdlg
