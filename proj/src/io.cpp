#include "expord/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace expord {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

CVector read_complex_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open input file: " + path);
    std::vector<cplx> samples;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::istringstream row(line);
        double re = 0.0, im = 0.0;
        char comma = 0;
        if (!(row >> re >> comma >> im) || comma != ',')
            throw std::runtime_error(path + ": parse error at line " +
                                     std::to_string(line_no) +
                                     " (expected `re,im`)");
        samples.emplace_back(re, im);
    }
    if (samples.empty())
        throw std::runtime_error(path + ": no samples");
    CVector v(static_cast<Eigen::Index>(samples.size()));
    for (std::size_t i = 0; i < samples.size(); ++i) v(i) = samples[i];
    return v;
}

void write_complex_csv(const std::string& path, const CVector& v) {
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot open output file: " + path);
    for (Eigen::Index i = 0; i < v.size(); ++i)
        out << format_double(v(i).real()) << ',' << format_double(v(i).imag())
            << '\n';
    if (!out)
        throw std::runtime_error("write failed: " + path);
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot open output file: " + path);
    out << content;
    if (!out)
        throw std::runtime_error("write failed: " + path);
}

} // namespace expord
