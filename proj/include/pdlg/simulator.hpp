#pragma once

#include <array>
#include <optional>

#include "pdlg/dialog.hpp"
#include "pdlg/kb.hpp"
#include "pdlg/patterns.hpp"
#include "pdlg/templates.hpp"

namespace pdlg {

enum class TaskId { pt1 = 1, pt2 = 2, pt3 = 3, pt4 = 4, pt5 = 5 };

TaskId task_from_int(int n);

// Profile-independent choices of one scenario.  A scenario is rendered once
// per profile combination, so everything drawn here is shared across those
// renderings; only draws whose count depends on the profile (PT3/PT5
// accept/reject coins) come from a per-rendering stream.
struct OpeningChoices {
  int greet_form = 0;
  int request_base = 0;
  std::vector<Field> request_fields;  // k fields in utterance order
  std::array<int, 4> answer_form{};   // indexed by Field
  int cuisine_form = 0;               // phrase form for cuisine mentions
  int party_form = 0;                 // phrase form for party mentions
};

struct UpdateChoice {
  Field field = Field::cuisine;
  int value = 0;  // resolved new value id
  int form = 0;   // update prefix form
  int cuisine_form = 0;
  int party_form = 0;
};

struct InfoChoices {
  int kind = 0;  // 0 = directions, 1 = contact, 2 = both
  bool contact_first = false;
  int contact_form = 0;
  int directions_form = 0;
  int thanks_form = 0;
};

struct Scenario {
  TaskId task = TaskId::pt1;
  int half = 0;
  int target = 0;  // index into kb.half(half)
  int favorite_idx = 0;
  int aux_diet = 0;  // diet for PT1/2/4 when four-attribute profiles are forced
  OpeningChoices open;
  std::vector<UpdateChoice> updates;  // PT2
  int no_form = 0;                    // PT2 closing "no"
  int book_base = 0;                  // PT4
  InfoChoices info;                   // PT4/PT5
};

Scenario draw_scenario(TaskId task, const KnowledgeBase& kb, int half, Rng rng);

// profile combinations enumerated per scenario: 6 (gender x age) for
// PT1/2/4, 12 (gender x age x diet) for PT3/5; favorite comes from the
// scenario's target cuisine
int profile_combos(TaskId task);
Profile combo_profile(const KnowledgeBase& kb, const Scenario& sc, int combo);

// all_attrs forces the four-attribute profile line onto PT1/2/4 dialogs
Dialog render_dialog(const KnowledgeBase& kb, const Scenario& sc,
                     const Profile& profile, Rng profile_rng,
                     bool all_attrs = false);

// one-shot form: derives scenario and rendering streams from rng
Dialog gen_task(TaskId task, Rng rng, const KnowledgeBase& kb, int half,
                const Profile& profile);

}  // namespace pdlg
