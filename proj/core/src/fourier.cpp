#include "nslab/fourier.hpp"

#include <fftw3.h>

#include <map>
#include <memory>
#include <mutex>
#include <utility>

namespace nslab {

namespace {

std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

// Per-thread FFTW state for one grid size: one in-place c2c buffer and the
// two plans. Plan creation/destruction is serialized; execution is not.
struct Workspace {
    std::size_t count = 0;
    fftw_complex* buf = nullptr;
    fftw_plan synthesis = nullptr;  // e^{+ik.x}, unscaled
    fftw_plan analysis = nullptr;   // e^{-ik.x}, caller scales by 1/count

    Workspace(int dim, int n) {
        count = 1;
        for (int d = 0; d < dim; ++d) count *= static_cast<std::size_t>(n);
        std::lock_guard<std::mutex> lock(planner_mutex());
        buf = fftw_alloc_complex(count);
        if (dim == 2) {
            synthesis = fftw_plan_dft_2d(n, n, buf, buf, FFTW_BACKWARD, FFTW_ESTIMATE);
            analysis = fftw_plan_dft_2d(n, n, buf, buf, FFTW_FORWARD, FFTW_ESTIMATE);
        } else {
            synthesis = fftw_plan_dft_3d(n, n, n, buf, buf, FFTW_BACKWARD, FFTW_ESTIMATE);
            analysis = fftw_plan_dft_3d(n, n, n, buf, buf, FFTW_FORWARD, FFTW_ESTIMATE);
        }
    }

    ~Workspace() {
        std::lock_guard<std::mutex> lock(planner_mutex());
        fftw_destroy_plan(synthesis);
        fftw_destroy_plan(analysis);
        fftw_free(buf);
    }

    Workspace(const Workspace&) = delete;
    Workspace& operator=(const Workspace&) = delete;
};

Workspace& workspace_for(const GridSpec& grid) {
    thread_local std::map<std::pair<int, int>, std::unique_ptr<Workspace>> cache;
    const auto key = std::make_pair(grid.dim, grid.n);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, std::make_unique<Workspace>(grid.dim, grid.n)).first;
    return *it->second;
}

}  // namespace

void synthesize_component(const SpectralField& u, int comp, std::vector<double>& out) {
    Workspace& ws = workspace_for(u.grid());
    const auto coeffs = u.component(comp);
    for (std::size_t i = 0; i < ws.count; ++i) {
        ws.buf[i][0] = coeffs[i].real();
        ws.buf[i][1] = coeffs[i].imag();
    }
    fftw_execute(ws.synthesis);
    out.resize(ws.count);
    for (std::size_t i = 0; i < ws.count; ++i) out[i] = ws.buf[i][0];
}

void analyze_component(const GridSpec& grid, const std::vector<double>& in, SpectralField& out, int comp) {
    Workspace& ws = workspace_for(grid);
    for (std::size_t i = 0; i < ws.count; ++i) {
        ws.buf[i][0] = in[i];
        ws.buf[i][1] = 0.0;
    }
    fftw_execute(ws.analysis);
    const double scale = 1.0 / static_cast<double>(ws.count);
    auto coeffs = out.component(comp);
    for (std::size_t i = 0; i < ws.count; ++i)
        coeffs[i] = SpectralField::Complex{ws.buf[i][0] * scale, ws.buf[i][1] * scale};
}

PhysicalField to_physical(const SpectralField& u) {
    PhysicalField phys;
    phys.grid = u.grid();
    const std::size_t pts = phys.grid.point_count();
    phys.data.resize(static_cast<std::size_t>(phys.grid.dim) * pts);
    std::vector<double> tmp;
    for (int c = 0; c < phys.grid.dim; ++c) {
        synthesize_component(u, c, tmp);
        std::copy(tmp.begin(), tmp.end(), phys.data.begin() + static_cast<std::size_t>(c) * pts);
    }
    return phys;
}

SpectralField to_spectral(const PhysicalField& u) {
    SpectralField spec(u.grid);
    const std::size_t pts = u.grid.point_count();
    std::vector<double> tmp(pts);
    for (int c = 0; c < u.grid.dim; ++c) {
        std::copy(u.component(c), u.component(c) + pts, tmp.begin());
        analyze_component(u.grid, tmp, spec, c);
    }
    return spec;
}

}  // namespace nslab
