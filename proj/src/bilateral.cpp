#include "lanepre/bilateral.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>

#include "kernels.hpp"

namespace lanepre::filter {

void BilateralParams::validate() const {
    if (kernel_size < 3 || kernel_size % 2 == 0)
        throw std::invalid_argument("bilateral: kernel_size must be odd and >= 3");
    if (!(sigma_spatial > 0.0))
        throw std::invalid_argument("bilateral: sigma_spatial must be positive");
    if (!(sigma_intensity > 0.0))
        throw std::invalid_argument("bilateral: sigma_intensity must be positive");
}

ImageF64 bilateral_filter(const ImageF64& image, const BilateralParams& params) {
    params.validate();
    const int w = image.width(), h = image.height();
    const int r = params.kernel_size / 2;
    ImageF64 out(w, h);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const double center = image.at(x, y);
            double acc = 0.0, wsum = 0.0;
            for (int dy = -r; dy <= r; ++dy) {
                const int sy = detail::fold_index(y + dy, h, params.border);
                for (int dx = -r; dx <= r; ++dx) {
                    const int sx = detail::fold_index(x + dx, w, params.border);
                    const double v = image.at(sx, sy);
                    const double dist2 = static_cast<double>(dx * dx + dy * dy);
                    const double diff = v - center;
                    const double wgt =
                        std::exp(-dist2 / (2.0 * params.sigma_spatial * params.sigma_spatial)) *
                        std::exp(-(diff * diff) /
                                 (2.0 * params.sigma_intensity * params.sigma_intensity));
                    acc += wgt * v;
                    wsum += wgt;
                }
            }
            out.at(x, y) = acc / wsum;
        }
    }
    return out;
}

ImageF64 bilateral_filter_raw(const ImageU8& image, const BilateralParams& params,
                              Backend backend) {
    params.validate();
    const Backend be = resolve_backend(backend);
    const detail::BilateralTables tables(params);
    ImageF64 out(image.width(), image.height());
#ifdef LANEPRE_HAVE_AVX2
    if (be == Backend::Avx2) {
        detail::bilateral_u8_avx2(image, tables, params.border, out);
        return out;
    }
#else
    (void)be;
#endif
    detail::bilateral_u8_scalar(image, tables, params.border, out);
    return out;
}

ImageU8 bilateral_filter_u8(const ImageU8& image, const BilateralParams& params,
                            Backend backend) {
    const ImageF64 raw = bilateral_filter_raw(image, params, backend);
    ImageU8 out(image.width(), image.height());
    for (int y = 0; y < image.height(); ++y)
        for (int x = 0; x < image.width(); ++x)
            out.at(x, y) = round_u8(raw.at(x, y));
    return out;
}

} // namespace lanepre::filter

namespace lanepre::detail {

BilateralTables::BilateralTables(const filter::BilateralParams& params)
    : radius(params.kernel_size / 2) {
    const int k = params.kernel_size;
    spatial.resize(static_cast<size_t>(k) * k);
    for (int dy = -radius; dy <= radius; ++dy)
        for (int dx = -radius; dx <= radius; ++dx) {
            const double dist2 = static_cast<double>(dx * dx + dy * dy);
            spatial[static_cast<size_t>(dy + radius) * k + (dx + radius)] =
                std::exp(-dist2 / (2.0 * params.sigma_spatial * params.sigma_spatial));
        }
    for (int d = 0; d < 256; ++d) {
        const double dd = static_cast<double>(d) * static_cast<double>(d);
        range[d] = std::exp(-dd / (2.0 * params.sigma_intensity * params.sigma_intensity));
    }
}

double bilateral_pixel(const ImageU8& in, const BilateralTables& t, int x, int y,
                       filter::Border border) {
    const int r = t.radius;
    const int c = in.at(x, y);
    double acc = 0.0, wsum = 0.0;
    size_t ki = 0;
    for (int dy = -r; dy <= r; ++dy) {
        const uint8_t* row = in.row(fold_index(y + dy, in.height(), border));
        for (int dx = -r; dx <= r; ++dx, ++ki) {
            const int v = row[fold_index(x + dx, in.width(), border)];
            const double wgt = t.spatial[ki] * t.range[std::abs(v - c)];
            acc += wgt * v;
            wsum += wgt;
        }
    }
    return acc / wsum;
}

void bilateral_u8_scalar(const ImageU8& in, const BilateralTables& t,
                         filter::Border border, ImageF64& out) {
    for (int y = 0; y < in.height(); ++y)
        for (int x = 0; x < in.width(); ++x)
            out.at(x, y) = bilateral_pixel(in, t, x, y, border);
}

} // namespace lanepre::detail
