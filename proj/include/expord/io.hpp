#pragma once

#include <string>

#include "expord/types.hpp"

namespace expord {

/// %.17g rendering: shortest fixed-width form that round-trips a double.
std::string format_double(double v);

/// Complex sample CSV, one `re,im` pair per line, no header.
CVector read_complex_csv(const std::string& path);
void write_complex_csv(const std::string& path, const CVector& v);

void write_text_file(const std::string& path, const std::string& content);

} // namespace expord
