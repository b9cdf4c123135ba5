#pragma once

#include <string>

#include "core/synthesis.hpp"

namespace eotrack {

struct TrackOutput;  // tracker.hpp

/// Measurement records: n,type,j,jp,d,u with type A|P, j the receiving
/// anchor id, jp the transmitting anchor id (-1 for active records).
std::string dataset_to_csv(const Dataset& ds, const Scenario& s);

/// Ground-truth records: n,p_x,p_y,v_x,v_y,m_x,m_y.
std::string truth_to_csv(const GroundTruth& gt);

void save_dataset(const Dataset& ds, const Scenario& s,
                  const std::string& measurements_path,
                  const std::string& truth_path);

/// Rebuilds a dataset from the two CSV files; the scenario supplies the
/// anchor list, pair order and measurement support for validation.
Dataset load_dataset(const std::string& measurements_path,
                     const std::string& truth_path, const Scenario& s);

std::string track_to_csv(const TrackOutput& track);
void save_track(const TrackOutput& track, const std::string& path);

}  // namespace eotrack
