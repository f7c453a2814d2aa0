#ifndef HAZMON_STUDY_CONFIG_HPP
#define HAZMON_STUDY_CONFIG_HPP

#include <string>

#include "hazmon/simulation.hpp"

namespace hazmon {

// Parse a flat "key = value" study configuration ('#' starts a comment).
// Unknown keys raise config_error listing every offending key.  Recognized
// keys are documented in the README and in configs/*.cfg.
StudySpec parse_study_config(const std::string& text);

}  // namespace hazmon

#endif
