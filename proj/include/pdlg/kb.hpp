#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "pdlg/rng.hpp"

namespace pdlg {

enum class Gender { male = 0, female = 1 };
enum class Age { young = 0, middle_aged = 1, elderly = 2 };
enum class Diet { veg = 0, non_veg = 1 };

// 0..5, used to index template variant columns
inline int style_index(Gender g, Age a) {
  return static_cast<int>(a) * 2 + static_cast<int>(g);
}

const char* gender_token(Gender g);
const char* age_token(Age a);
const char* diet_token(Diet d);

struct Profile {
  Gender gender = Gender::male;
  Age age = Age::young;
  Diet diet = Diet::veg;
  std::string favorite;  // a dish token
};

// Global value lists.  Each KB half owns a disjoint subset of cuisines and
// locations; prices, party sizes and ratings are shared.
struct KbConfig {
  std::vector<std::string> cuisines;
  std::vector<std::string> locations;
  std::vector<std::string> prices;   // cheap moderate expensive
  std::vector<std::string> parties;  // two four six eight
  std::map<std::string, std::vector<std::string>> dishes;  // cuisine -> 4 dishes
  int min_rating = 1;
  int max_rating = 8;
  std::vector<int> half_a_cuisines;   // indices into cuisines
  std::vector<int> half_a_locations;  // indices into locations

  static KbConfig defaults();
  void validate() const;  // throws CorpusError

  std::vector<int> half_cuisines(int half) const;  // 0 = A, 1 = B
  std::vector<int> half_locations(int half) const;
};

struct Restaurant {
  int cuisine = 0;   // index into config.cuisines
  int location = 0;  // index into config.locations
  int price = 0;
  int rating = 1;
  int party = 0;       // index into config.parties
  int veg = 1;         // name index: 1 = veg, 2 = non-veg
  int speciality = 0;  // index into the cuisine's dish list
  std::string name;
};

struct KbFact {
  std::string name;
  std::string rel;
  std::string value;
};

// the 12 relations in fact-emission order
extern const std::array<const char*, 12> kKbRelations;

struct KnowledgeBase {
  KbConfig config;
  std::array<std::vector<Restaurant>, 2> halves;  // 1200 each

  const std::vector<Restaurant>& half(int h) const { return halves[h]; }
};

// Deterministic given (config, seed): enumerates location x cuisine x price x
// rating per half; party size and speciality are drawn per rating pair and
// shared by the veg/non-veg duplicates.
KnowledgeBase generate_kb(const KbConfig& config, std::uint64_t seed);

std::string restaurant_name(const KbConfig& c, const Restaurant& r);
std::vector<KbFact> kb_facts(const KbConfig& c, const Restaurant& r);

// canonical result order: rating desc, veg (index 1) first, name asc
bool result_order_less(const Restaurant& a, const Restaurant& b);

// all restaurants of one half matching the four query fields, result order
std::vector<const Restaurant*> api_call_lookup(const KnowledgeBase& kb, int half,
                                               int cuisine, int location,
                                               int price, int party);

// personalized score in exact integer halves: 2*rating + 16*(diet match)
// + 5*(speciality == favorite).  Distinct restaurants of one lookup result
// can never tie (parity/range argument over the three terms).
int score2_restaurant(const KbConfig& c, const Restaurant& r, const Profile& p);

// the same score as a plain number: rating + 8*diet + 2.5*favorite
double score_restaurant(const KbConfig& c, const Restaurant& r, const Profile& p);

// proposal order: personalized score desc; throws on a tie
std::vector<const Restaurant*> rank_for_profile(
    const KbConfig& c, std::vector<const Restaurant*> result, const Profile& p);

// gender/age/diet uniform; favorite uniform over the given cuisine's dishes
Profile sample_profile(const KbConfig& c, Rng& rng, int cuisine);

std::string profile_line_short(const Profile& p);  // "<gender> <age>"
std::string profile_line_full(const Profile& p);   // + "<diet> <favorite>"

void write_kb_file(const KnowledgeBase& kb, int half, const std::string& path);

}  // namespace pdlg
