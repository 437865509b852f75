#pragma once

#include <string>
#include <vector>

#include "morph/kinematics.hpp"

namespace morph {

enum class ElementClass { Bend, Twist };

struct MeasurementRow {
  double strain = 0.0;     // fraction, 0.13 = 13 %
  double angle_deg = 0.0;  // per element
};

struct MeasurementTable {
  std::vector<MeasurementRow> rows;  // strictly increasing strain
  ElementClass element_class = ElementClass::Bend;

  // Throws std::invalid_argument for fewer than 2 rows, non-finite values
  // or non-increasing strains.
  void validate() const;
};

// Raised when a query strain lies outside the table.
class ExtrapolationError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Angle of one element from a measurement over a chain of identical elements.
double chain_average(double total_angle_deg, int n_elements);

// Piecewise-linear lookup; knots are reproduced exactly.
double strain_to_angle(const MeasurementTable& table, double strain);

// Turns a single measurement into a two-row table through (0, 0).
MeasurementTable proportional_table(const MeasurementRow& row, ElementClass element_class);

// Published measurements the default profile is built from.
struct ReferenceMeasurements {
  double programming_strain = 0.13;
  double bend_angle_deg = 25.0;   // 10-element chain, averaged
  double twist_angle_deg = 4.0;   // 3-element chain, averaged
  double fea_twist_angle_deg = 3.5;  // model prediction, not used for kinematics
  double fea_bend_angle_deg = 33.0;  // model prediction, not used for kinematics
};

MeasurementTable default_bend_table();
MeasurementTable default_twist_table();

// Copy of `base` with both angles looked up at `strain`.
ActivationProfile calibrated_profile(const MeasurementTable& bend, const MeasurementTable& twist,
                                     double strain, const ActivationProfile& base = {});

// Reads `strain,angle_deg` CSV. Throws IoError with file and line context.
MeasurementTable load_measurement_csv(const std::string& path, ElementClass element_class);
MeasurementTable parse_measurement_csv(const std::string& text, const std::string& source,
                                       ElementClass element_class);

}  // namespace morph
