#include "guiharvest/actions.hpp"

#include <array>

#include "guiharvest/util/strings.hpp"

namespace guiharvest {

namespace {

enum class ValueRule { Optional, Required, Forbidden };
enum class PositionRule { SinglePoint, PointPair, Forbidden };

struct KindSpec {
  ActionKind kind;
  std::string_view name;
  ValueRule value;
  PositionRule position;
  bool desktop;
  bool mobile;
};

constexpr std::array<KindSpec, kActionKindCount> kKinds = {{
    {ActionKind::Click, "CLICK", ValueRule::Optional, PositionRule::SinglePoint, true, false},
    {ActionKind::Input, "INPUT", ValueRule::Required, PositionRule::SinglePoint, true, true},
    {ActionKind::Scroll, "SCROLL", ValueRule::Required, PositionRule::SinglePoint, true, false},
    {ActionKind::LeftClickDouble, "LEFT_CLICK_DOUBLE", ValueRule::Optional, PositionRule::SinglePoint, true, false},
    {ActionKind::RightClickSingle, "RIGHT_CLICK_SINGLE", ValueRule::Optional, PositionRule::SinglePoint, true, false},
    {ActionKind::Drag, "DRAG", ValueRule::Optional, PositionRule::PointPair, true, false},
    {ActionKind::HotKey, "HOT_KEY", ValueRule::Required, PositionRule::Forbidden, true, false},
    {ActionKind::Hover, "HOVER", ValueRule::Optional, PositionRule::SinglePoint, true, false},
    {ActionKind::Wait, "WAIT", ValueRule::Forbidden, PositionRule::Forbidden, true, true},
    {ActionKind::Finish, "FINISH", ValueRule::Forbidden, PositionRule::Forbidden, true, true},
    {ActionKind::Tap, "TAP", ValueRule::Optional, PositionRule::SinglePoint, false, true},
    {ActionKind::Swipe, "SWIPE", ValueRule::Optional, PositionRule::PointPair, false, true},
    {ActionKind::LongPress, "LONG_PRESS", ValueRule::Required, PositionRule::SinglePoint, false, true},
    {ActionKind::PressHome, "PRESS_HOME", ValueRule::Forbidden, PositionRule::Forbidden, false, true},
    {ActionKind::PressBack, "PRESS_BACK", ValueRule::Forbidden, PositionRule::Forbidden, false, true},
    {ActionKind::CallUser, "CALL_USER", ValueRule::Forbidden, PositionRule::Forbidden, true, true},
}};

const KindSpec& spec_for(ActionKind kind) {
  return kKinds[static_cast<std::size_t>(kind)];
}

bool point_in_range(const Point& p) {
  return p.x >= 0.0 && p.x <= 1.0 && p.y >= 0.0 && p.y <= 1.0;
}

}  // namespace

std::string_view kind_name(ActionKind kind) { return spec_for(kind).name; }

std::optional<ActionKind> kind_from_name(std::string_view name) {
  for (const auto& spec : kKinds) {
    if (util::iequals(spec.name, name)) return spec.kind;
  }
  return std::nullopt;
}

std::optional<ValidationError> validate_action(const Action& action) {
  const KindSpec& spec = spec_for(action.kind);
  std::string name(spec.name);

  switch (spec.value) {
    case ValueRule::Required:
      if (!action.value || action.value->empty())
        return ValidationError{"value", name + " requires a non-empty value"};
      break;
    case ValueRule::Forbidden:
      if (action.value)
        return ValidationError{"value", name + " takes no value"};
      break;
    case ValueRule::Optional:
      break;
  }

  switch (spec.position) {
    case PositionRule::SinglePoint: {
      const Point* p = std::get_if<Point>(&action.position);
      if (!p)
        return ValidationError{"position", name + " requires a single point"};
      if (!point_in_range(*p))
        return ValidationError{"position", "coordinates outside [0, 1]"};
      break;
    }
    case PositionRule::PointPair: {
      const PointPair* pp = std::get_if<PointPair>(&action.position);
      if (!pp)
        return ValidationError{"position", name + " requires a start and end point"};
      if (!point_in_range(pp->from) || !point_in_range(pp->to))
        return ValidationError{"position", "coordinates outside [0, 1]"};
      break;
    }
    case PositionRule::Forbidden:
      if (!std::holds_alternative<std::monostate>(action.position))
        return ValidationError{"position", name + " takes no position"};
      break;
  }
  return std::nullopt;
}

bool kind_is_mobile(ActionKind kind) { return spec_for(kind).mobile; }
bool kind_is_desktop(ActionKind kind) { return spec_for(kind).desktop; }

}  // namespace guiharvest
