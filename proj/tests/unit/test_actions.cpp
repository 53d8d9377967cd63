#include <doctest.h>

#include "guiharvest/actions.hpp"

using namespace guiharvest;

namespace {

Action make(ActionKind kind) {
  Action a;
  a.kind = kind;
  return a;
}

Action with_point(ActionKind kind, double x = 0.5, double y = 0.5) {
  Action a = make(kind);
  a.position = Point{x, y};
  return a;
}

}  // namespace

TEST_CASE("kind names round-trip, case-insensitively") {
  for (int i = 0; i < kActionKindCount; ++i) {
    auto kind = static_cast<ActionKind>(i);
    std::string name(kind_name(kind));
    CHECK(kind_from_name(name) == kind);
    for (char& c : name) c = static_cast<char>(std::tolower(c));
    CHECK(kind_from_name(name) == kind);
  }
  CHECK(!kind_from_name("DOUBLE_CLICK"));
  CHECK(!kind_from_name(""));
}

TEST_CASE("value rules") {
  Action input = with_point(ActionKind::Input);
  CHECK(validate_action(input)->field == "value");
  input.value = "";
  CHECK(validate_action(input)->field == "value");
  input.value = "text";
  CHECK(!validate_action(input));

  Action wait = make(ActionKind::Wait);
  CHECK(!validate_action(wait));
  wait.value = "3s";
  CHECK(validate_action(wait)->field == "value");

  Action click = with_point(ActionKind::Click);
  CHECK(!validate_action(click));
  click.value = "the button";  // optional value allowed
  CHECK(!validate_action(click));

  Action hotkey = make(ActionKind::HotKey);
  CHECK(validate_action(hotkey)->field == "value");
  hotkey.value = "ctrl+s";
  CHECK(!validate_action(hotkey));
}

TEST_CASE("position rules") {
  CHECK(validate_action(make(ActionKind::Click))->field == "position");

  Action pairclick = make(ActionKind::Click);
  pairclick.position = PointPair{{0.1, 0.1}, {0.2, 0.2}};
  CHECK(validate_action(pairclick)->field == "position");

  Action drag = make(ActionKind::Drag);
  CHECK(validate_action(drag)->field == "position");
  drag.position = Point{0.5, 0.5};
  CHECK(validate_action(drag)->field == "position");
  drag.position = PointPair{{0.1, 0.1}, {0.9, 0.9}};
  CHECK(!validate_action(drag));

  Action hotkey = with_point(ActionKind::HotKey);
  hotkey.value = "ctrl+c";
  CHECK(validate_action(hotkey)->field == "position");

  Action finish = make(ActionKind::Finish);
  CHECK(!validate_action(finish));
  finish.position = Point{0.5, 0.5};
  CHECK(validate_action(finish)->field == "position");
}

TEST_CASE("coordinates must stay inside the unit square") {
  CHECK(!validate_action(with_point(ActionKind::Click, 0.0, 0.0)));
  CHECK(!validate_action(with_point(ActionKind::Click, 1.0, 1.0)));
  CHECK(validate_action(with_point(ActionKind::Click, 1.0001, 0.5)));
  CHECK(validate_action(with_point(ActionKind::Click, 0.5, -0.0001)));

  Action swipe = make(ActionKind::Swipe);
  swipe.position = PointPair{{0.5, 0.5}, {0.5, 1.5}};
  CHECK(validate_action(swipe)->reason == "coordinates outside [0, 1]");
}

TEST_CASE("platform vocabularies overlap on the shared kinds") {
  CHECK(kind_is_desktop(ActionKind::Click));
  CHECK(!kind_is_mobile(ActionKind::Click));
  CHECK(kind_is_mobile(ActionKind::Tap));
  CHECK(!kind_is_desktop(ActionKind::Tap));
  for (ActionKind k : {ActionKind::Input, ActionKind::Wait, ActionKind::Finish,
                       ActionKind::CallUser}) {
    CHECK(kind_is_desktop(k));
    CHECK(kind_is_mobile(k));
  }
}
