#pragma once

#include <fftw3.h>

#include <cstddef>
#include <vector>

namespace mixsch::detail {

struct GridImpl {
    std::size_t nx = 0;
    std::size_t ny = 0;
    double lx = 0.0;
    double ly = 0.0;
    double dx = 0.0;
    double dy = 0.0;
    std::vector<double> k1;
    std::vector<double> k2;
    fftw_plan forward = nullptr;   // r2c, out of place
    fftw_plan backward = nullptr;  // c2r, out of place, destroys its input

    GridImpl(std::size_t nx_, std::size_t ny_, double lx_, double ly_);
    ~GridImpl();
    GridImpl(const GridImpl&) = delete;
    GridImpl& operator=(const GridImpl&) = delete;
};

}  // namespace mixsch::detail
