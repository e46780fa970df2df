#pragma once

#include <string>
#include <string_view>

#include "sqt/origami.hpp"

namespace sqt::io {

// Text form:
//   n=3
//   h=(1 2)
//   v=(1 3)
//   marked=singular | all | 1:BL,2:TR,...
// Squares are numbered from 1 and fixed points may be omitted; '#' starts a
// comment and ';' may stand in for a newline.  JSON form:
//   {"n": 3, "h": [[1, 2]], "v": [[1, 3]], "marked": "singular"}
// where h and v are lists of cycles or full image lists, and "marked" is a
// keyword or a list of "square:corner" strings.  The format is detected
// from the first non-blank character.
Origami parse_origami(std::string_view text);
Origami parse_origami_text(std::string_view text);
Origami parse_origami_json(std::string_view text);

std::string origami_to_json(const Origami& o);

// A file path, one of the built-in names T1 O2 L3 W4, or inline text.
Origami load_origami(const std::string& source);

}  // namespace sqt::io
