#include "morph/calibration.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "morph/errors.hpp"
#include "morph/io.hpp"

namespace morph {

void MeasurementTable::validate() const {
  if (rows.size() < 2) throw std::invalid_argument("measurement table needs at least 2 rows");
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!std::isfinite(rows[i].strain) || !std::isfinite(rows[i].angle_deg)) {
      throw std::invalid_argument("measurement table row " + std::to_string(i) + " is not finite");
    }
    if (i > 0 && !(rows[i].strain > rows[i - 1].strain)) {
      throw std::invalid_argument("measurement strains must be strictly increasing (row " +
                                  std::to_string(i) + ")");
    }
  }
}

double chain_average(double total_angle_deg, int n_elements) {
  if (n_elements < 1) throw std::invalid_argument("chain_average: element count must be >= 1");
  return total_angle_deg / n_elements;
}

double strain_to_angle(const MeasurementTable& table, double strain) {
  table.validate();
  const auto& r = table.rows;
  if (!(strain >= r.front().strain && strain <= r.back().strain)) {
    throw ExtrapolationError("strain_to_angle: strain " + format_number(strain) + " outside [" +
                             format_number(r.front().strain) + ", " + format_number(r.back().strain) +
                             "]");
  }
  for (std::size_t i = 0; i + 1 < r.size(); ++i) {
    if (strain == r[i].strain) return r[i].angle_deg;
    if (strain < r[i + 1].strain) {
      const double w = (strain - r[i].strain) / (r[i + 1].strain - r[i].strain);
      return r[i].angle_deg + w * (r[i + 1].angle_deg - r[i].angle_deg);
    }
  }
  return r.back().angle_deg;
}

MeasurementTable proportional_table(const MeasurementRow& row, ElementClass element_class) {
  if (!(row.strain > 0.0)) throw std::invalid_argument("proportional_table: strain must be positive");
  MeasurementTable t;
  t.element_class = element_class;
  t.rows = {{0.0, 0.0}, row};
  return t;
}

MeasurementTable default_bend_table() {
  const ReferenceMeasurements ref;
  return proportional_table({ref.programming_strain, ref.bend_angle_deg}, ElementClass::Bend);
}

MeasurementTable default_twist_table() {
  const ReferenceMeasurements ref;
  return proportional_table({ref.programming_strain, ref.twist_angle_deg}, ElementClass::Twist);
}

ActivationProfile calibrated_profile(const MeasurementTable& bend, const MeasurementTable& twist,
                                     double strain, const ActivationProfile& base) {
  if (bend.element_class != ElementClass::Bend) throw std::invalid_argument("bend table has twist class");
  if (twist.element_class != ElementClass::Twist) throw std::invalid_argument("twist table has bend class");
  ActivationProfile p = base;
  p.bend_angle_deg = strain_to_angle(bend, strain);
  p.twist_angle_deg = strain_to_angle(twist, strain);
  p.validate();
  return p;
}

MeasurementTable parse_measurement_csv(const std::string& text, const std::string& source,
                                       ElementClass element_class) {
  const NumericCsv csv = parse_numeric_csv(text, source, {"strain", "angle_deg"});
  MeasurementTable t;
  t.element_class = element_class;
  for (std::size_t i = 0; i < csv.rows.size(); ++i) {
    MeasurementRow row{csv.rows[i][0], csv.rows[i][1]};
    if (!t.rows.empty() && !(row.strain > t.rows.back().strain)) {
      throw IoError(source + ":" + std::to_string(csv.line_numbers[i]) +
                    ": strain must be strictly increasing");
    }
    t.rows.push_back(row);
  }
  if (t.rows.size() == 1) return proportional_table(t.rows.front(), element_class);
  if (t.rows.empty()) throw IoError(source + ": no measurement rows");
  return t;
}

MeasurementTable load_measurement_csv(const std::string& path, ElementClass element_class) {
  return parse_measurement_csv(read_file(path), path, element_class);
}

}  // namespace morph
