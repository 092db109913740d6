#pragma once

#include <cstdint>
#include <string>

#include "react/geometry.hpp"

namespace react {

enum class ClassTag { Car, Truck, Cyclist, Pedestrian };

// Severity coefficient scales the kinetic source energy per participant type.
// Heavy vehicles threaten more per joule; pedestrians less.
struct AgentClass {
  ClassTag tag = ClassTag::Car;
  double severity = 1.0;

  static AgentClass for_tag(ClassTag t) {
    switch (t) {
      case ClassTag::Truck:      return {t, 1.5};
      case ClassTag::Pedestrian: return {t, 0.8};
      case ClassTag::Cyclist:    return {t, 0.9};
      case ClassTag::Car:        break;
    }
    return {t, 1.0};
  }
};

double default_mass_kg(ClassTag t);
const char* class_name(ClassTag t);
bool parse_class_tag(const std::string& name, ClassTag& out);

struct AgentState {
  std::int64_t id = 0;
  Vec2 position;      // m, world frame
  Vec2 velocity;      // m/s, world frame
  double mass = 1500; // kg
  AgentClass cls;
};

}  // namespace react
