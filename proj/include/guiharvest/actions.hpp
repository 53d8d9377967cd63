#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace guiharvest {

// Union of the desktop and mobile action vocabularies. Wire names are the
// upper snake-case forms returned by kind_name().
enum class ActionKind {
  // Desktop
  Click,
  Input,
  Scroll,
  LeftClickDouble,
  RightClickSingle,
  Drag,
  HotKey,
  Hover,
  Wait,
  Finish,
  // Mobile (Input/Wait/Finish shared with desktop)
  Tap,
  Swipe,
  LongPress,
  PressHome,
  PressBack,
  // Escalation marker emitted by agents when a human must take over.
  CallUser,
};

constexpr int kActionKindCount = 16;

// Relative screen coordinates in [0, 1], quantized to 4 decimal places.
struct Point {
  double x = 0;
  double y = 0;
  bool operator==(const Point&) const = default;
};

// Start and end position for drag/swipe gestures.
struct PointPair {
  Point from;
  Point to;
  bool operator==(const PointPair&) const = default;
};

// monostate = no position.
using Position = std::variant<std::monostate, Point, PointPair>;

struct Action {
  ActionKind kind = ActionKind::Click;
  std::optional<std::string> value;
  Position position;
  bool operator==(const Action&) const = default;
};

// One agent turn: free-form reasoning plus one or more actions.
struct ThoughtAction {
  std::string thought;
  std::vector<Action> actions;
  bool operator==(const ThoughtAction&) const = default;
};

struct ValidationError {
  std::string field;   // "value" or "position"
  std::string reason;
  bool operator==(const ValidationError&) const = default;
};

// "CLICK", "LEFT_CLICK_DOUBLE", ...
std::string_view kind_name(ActionKind kind);

// Inverse of kind_name, ASCII case-insensitive. nullopt for unknown names.
std::optional<ActionKind> kind_from_name(std::string_view name);

// Per-kind requirements on value and position:
//   value     required: INPUT, SCROLL, HOT_KEY, LONG_PRESS
//   value     forbidden: WAIT, FINISH, PRESS_HOME, PRESS_BACK, CALL_USER
//   value     optional:  everything else
//   position  single point required: CLICK, INPUT, SCROLL, LEFT_CLICK_DOUBLE,
//             RIGHT_CLICK_SINGLE, HOVER, TAP, LONG_PRESS
//   position  point pair required: DRAG, SWIPE
//   position  forbidden: HOT_KEY, WAIT, FINISH, PRESS_HOME, PRESS_BACK,
//             CALL_USER
// Coordinates must lie in [0, 1]. Returns nullopt when the action is valid.
std::optional<ValidationError> validate_action(const Action& action);

bool kind_is_mobile(ActionKind kind);
bool kind_is_desktop(ActionKind kind);

}  // namespace guiharvest
