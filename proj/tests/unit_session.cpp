#include <catch2/catch_amalgamated.hpp>

#include "gazepinch/session.hpp"

using namespace gazepinch;

namespace {

Scene tiny_scene() {
  Scene s;
  s.config = SceneConfig{};
  s.config.object_count = 2;
  s.config.target_count = 1;
  s.objects = {
      SceneObject{0, Vec3{-1.5, 0.0, 13.5}, 0.2, 0.6, true},
      SceneObject{1, Vec3{1.5, 0.0, 13.5}, 0.2, 0.6, false},
  };
  return s;
}

// Minimal frame driver: distances become vertical thumb-index gaps, gaze aims
// at an object center or far off the board.
struct Driver {
  Session session;
  double t = 0.0;
  const Scene* scene;

  Driver(const Scene& s, TechniqueId id, SessionParams p = {})
      : session(s, id, p), scene(&s) {}

  FrameOutput frame(std::optional<double> dh, std::optional<double> ndh,
                    std::optional<int> look = std::nullopt) {
    t += 1.0 / 90.0;
    InputFrame f;
    f.timestamp = t;
    auto set = [](HandPose& h, std::optional<double> d) {
      if (!d) {
        h.tracked = false;
        return;
      }
      h.thumb_tip = {0, 0, 0};
      h.index_tip = {0, *d, 0};
    };
    set(f.dominant, dh);
    set(f.non_dominant, ndh);
    f.gaze.origin = {0, 0, 0};
    f.gaze.direction =
        look ? normalized(scene->object(*look).position) : Vec3{0, -1, 0};
    return session.step(f);
  }

  // Walk the dominant hand to a full-release edge: semi first, then open.
  std::vector<InteractionEvent> start_trial() {
    frame(0.05, 0.12);
    auto out = frame(0.12, 0.12);
    return out.events;
  }
};

int count_kind(const std::vector<InteractionEvent>& evs, EventKind k) {
  int n = 0;
  for (const auto& e : evs)
    if (e.kind == k) ++n;
  return n;
}

}  // namespace

TEST_CASE("a dominant-hand release edge starts the trial") {
  const Scene s = tiny_scene();
  Driver d(s, TechniqueId::SemiDwell);

  CHECK(d.session.group().phase == Phase::Idle);
  auto evs = d.start_trial();
  REQUIRE(evs.size() == 1);
  CHECK(evs[0].kind == EventKind::TrialStarted);
  CHECK(d.session.group().phase == Phase::Selecting);
}

TEST_CASE("gaze is not resolved before the trial starts") {
  const Scene s = tiny_scene();
  Driver d(s, TechniqueId::SemiDwell);

  // Stare straight at object 0 while idle: no fixation episode may begin.
  for (int i = 0; i < 60; ++i) d.frame(0.12, 0.12, 0);
  CHECK_FALSE(d.session.gaze().gazed_object.has_value());

  // The dwell clock therefore starts only after the trial does.
  d.frame(0.05, 0.12, 0);  // semi: ready for the release edge
  d.frame(0.12, 0.12, 0);  // trial starts here
  int toggles = 0;
  for (int i = 0; i < 44; ++i) {
    d.frame(0.05, 0.12, 0);
    toggles += count_kind(d.session.log(), EventKind::SubselectToggled);
    REQUIRE(toggles == 0);  // 44 frames * 1/90 s < 0.5 s of post-start gaze
  }
}

TEST_CASE("toggles flip membership and tag distractors") {
  const Scene s = tiny_scene();
  SessionParams p;
  Driver d(s, TechniqueId::SemiNDH, p);
  d.start_trial();
  d.frame(0.05, 0.05, 1);  // mode on, gaze the distractor, click hand closing

  auto evs = d.frame(0.05, 0.01, 1).events;  // non-dominant click
  REQUIRE(evs.size() == 1);
  CHECK(evs[0].kind == EventKind::SubselectToggled);
  CHECK(evs[0].object == 1);
  CHECK(evs[0].now_grouped);
  CHECK(evs[0].is_distractor);
  CHECK(d.session.group().members.count(1) == 1);
  CHECK(d.session.highlight(1) == Highlight::Grouped);

  // Open and click again: the same object toggles back out.
  d.frame(0.05, 0.05, 1);
  evs = d.frame(0.05, 0.01, 1).events;
  REQUIRE(evs.size() == 1);
  CHECK_FALSE(evs[0].now_grouped);
  CHECK(d.session.group().members.empty());
}

TEST_CASE("a release edge during selection clears the group") {
  const Scene s = tiny_scene();
  Driver d(s, TechniqueId::SemiNDH);
  d.start_trial();
  d.frame(0.05, 0.05, 0);
  d.frame(0.05, 0.01, 0);  // toggle object 0 in
  REQUIRE(d.session.group().members.size() == 1);

  auto evs = d.frame(0.12, 0.12, 0).events;  // dominant hand lets go
  CHECK(count_kind(evs, EventKind::GroupCleared) == 1);
  CHECK(d.session.group().members.empty());
  CHECK(d.session.group().phase == Phase::Selecting);

  // Selection continues: re-enter the mode and toggle again.
  d.frame(0.05, 0.05, 0);
  evs = d.frame(0.05, 0.01, 0).events;
  CHECK(count_kind(evs, EventKind::SubselectToggled) == 1);
  CHECK(d.session.group().members.size() == 1);
}

TEST_CASE("a quarter-second full pinch finalizes the trial") {
  const Scene s = tiny_scene();
  Driver d(s, TechniqueId::SemiDwell);
  d.start_trial();
  d.frame(0.05, 0.12);  // semi
  d.frame(0.01, 0.12);  // full-pinch entry: hold clock starts

  std::vector<InteractionEvent> evs;
  int frames_held = 0;
  while (evs.empty() && frames_held < 30) {
    evs = d.frame(0.01, 0.12).events;
    ++frames_held;
  }
  // 0.25 s at 90 fps is 22.5 frames: the 23rd frame after entry matures it.
  CHECK(frames_held == 23);
  REQUIRE(evs.size() == 2);
  CHECK(evs[0].kind == EventKind::GroupFinalized);
  CHECK(evs[1].kind == EventKind::TrialEnded);
  CHECK(d.session.group().phase == Phase::Finalized);

  // Everything after the end is inert.
  auto after = d.frame(0.12, 0.12, 0);
  CHECK(after.events.empty());
  CHECK_FALSE(d.session.gaze().gazed_object.has_value());
}

TEST_CASE("baseline technique cannot finalize while its mode pinch is held") {
  const Scene s = tiny_scene();
  Driver d(s, TechniqueId::FullDH);
  d.start_trial();
  d.frame(0.05, 0.05);  // both semi
  d.frame(0.05, 0.01);  // mode on (non-dominant full)
  d.frame(0.01, 0.01);  // dominant full: a confirm click, hold clock running

  // Hold both pinches for 40 frames (0.44 s), far past the finalize hold.
  for (int i = 0; i < 40; ++i) {
    auto evs = d.frame(0.01, 0.01).events;
    CHECK(count_kind(evs, EventKind::GroupFinalized) == 0);
  }
  CHECK(d.session.group().phase == Phase::Selecting);

  // Release the mode hand: the still-held dominant pinch now finalizes.
  auto evs = d.frame(0.01, 0.05).events;
  CHECK(count_kind(evs, EventKind::GroupFinalized) == 1);
  CHECK(d.session.group().phase == Phase::Finalized);
}

TEST_CASE("sessions are deterministic over identical frame streams") {
  const Scene s = tiny_scene();
  auto run = [&] {
    Driver d(s, TechniqueId::SemiDwell);
    d.start_trial();
    for (int i = 0; i < 50; ++i) d.frame(0.05, 0.12, 0);
    for (int i = 0; i < 10; ++i) d.frame(0.05, 0.12);
    for (int i = 0; i < 50; ++i) d.frame(0.05, 0.12, 1);
    d.frame(0.01, 0.12);
    for (int i = 0; i < 25; ++i) d.frame(0.01, 0.12);
    return d.session.log();
  };
  CHECK(run() == run());
}

TEST_CASE("no toggles are dropped in a normal run") {
  const Scene s = tiny_scene();
  Driver d(s, TechniqueId::SemiDwell);
  d.start_trial();
  for (int i = 0; i < 50; ++i) d.frame(0.05, 0.12, 0);
  CHECK(d.session.ignored_toggles() == 0);
}
