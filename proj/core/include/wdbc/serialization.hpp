#pragma once

#include <string>

#include "wdbc/logreg.hpp"
#include "wdbc/svm.hpp"
#include "wdbc/vblr.hpp"

namespace wdbc {

// Versioned JSON documents.  Numbers round-trip exactly (shortest decimal
// representation), so a reloaded model reproduces decision values and
// seeded Monte Carlo predictions bit for bit.  All loaders throw ParseError
// on malformed input or an unknown format/version.

std::string svm_to_json(const SvmModel& model);
SvmModel svm_from_json(const std::string& text);

std::string logreg_to_json(const LogRegModel& model);
LogRegModel logreg_from_json(const std::string& text);

std::string vblr_to_json(const VblrPosterior& post);
VblrPosterior vblr_from_json(const std::string& text);

}  // namespace wdbc
