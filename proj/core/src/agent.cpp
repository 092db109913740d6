#include "react/agent.hpp"

namespace react {

double default_mass_kg(ClassTag t) {
  switch (t) {
    case ClassTag::Car:        return 1500.0;
    case ClassTag::Truck:      return 10000.0;
    case ClassTag::Cyclist:    return 90.0;
    case ClassTag::Pedestrian: return 70.0;
  }
  return 1500.0;
}

const char* class_name(ClassTag t) {
  switch (t) {
    case ClassTag::Car:        return "Car";
    case ClassTag::Truck:      return "Truck";
    case ClassTag::Cyclist:    return "Cyclist";
    case ClassTag::Pedestrian: return "Pedestrian";
  }
  return "Car";
}

bool parse_class_tag(const std::string& name, ClassTag& out) {
  if (name == "Car" || name == "car") { out = ClassTag::Car; return true; }
  if (name == "Truck" || name == "truck") { out = ClassTag::Truck; return true; }
  if (name == "Cyclist" || name == "cyclist" || name == "bicycle") {
    out = ClassTag::Cyclist;
    return true;
  }
  if (name == "Pedestrian" || name == "pedestrian") {
    out = ClassTag::Pedestrian;
    return true;
  }
  return false;
}

}  // namespace react
