#pragma once

#include <map>
#include <string>

#include "phfem/models.hpp"
#include "phfem/timeint.hpp"

namespace phfem {

/// Flat key=value file with [section] headers and # comments.
struct ExperimentConfig {
    std::string experiment;
    std::string out_dir = "out";
    bool plots = true;
    double sigma = 1.0;
    BootstrapMode bootstrap = BootstrapMode::HalfStep;
    bool monolithic = false; // time-domain runs: monolithic midpoint instead of staggered
    BeamConfig beam;
    WaveConfig wave;
    int n_modes = 10;
    bool vectors = false; // export eigenvector coefficients
    std::string config_hash;
};

ExperimentConfig parse_config(const std::string& path);
ExperimentConfig parse_config_text(const std::string& text, const std::string& origin);

} // namespace phfem
