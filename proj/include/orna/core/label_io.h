// include/orna/core/label_io.h

// Copyright 2026  The orna Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef ORNA_CORE_LABEL_IO_H_
#define ORNA_CORE_LABEL_IO_H_

#include <string>
#include <string_view>

#include "orna/core/types.h"

namespace orna {

// Parses an Audacity label track: one `start<TAB>end<TAB>label` line per
// event. Blank lines and Audacity's spectral-selection lines (leading '\')
// are skipped. Throws Error carrying the 1-based line number.
LabelTrack parse_label_track(std::string_view text, const std::string &clip_id = "");

// One line per event in onset order, times with 6 decimals, short codes.
std::string write_label_track(const LabelTrack &track);

LabelTrack read_label_file(const std::string &path, const std::string &clip_id = "");
void write_label_file(const std::string &path, const LabelTrack &track);

}  // namespace orna

#endif  // ORNA_CORE_LABEL_IO_H_
