#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "edgebench/image.hpp"

namespace edgebench {

/// Parse failure with a machine-checkable reason.
class PnmError : public std::runtime_error {
public:
    enum class Kind { BadMagic, BadDimensions, BadMaxval, Truncated, Malformed };

    PnmError(Kind k, const std::string& msg) : std::runtime_error(msg), kind_(k) {}
    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

using PnmImage = std::variant<GrayImage, ColorImage>;

/// Decode PGM (P2/P5) or PPM (P3/P6), maxval 255 only. '#' comments and
/// arbitrary whitespace are tolerated in the header.
PnmImage load_pnm(std::span<const std::uint8_t> bytes);

/// Encode binary P5/P6 with single-whitespace header separators:
/// "P5\n<w> <h>\n255\n" followed by the raw payload. Intensities must be
/// quantized already; a non-integer value throws std::invalid_argument.
std::vector<std::uint8_t> save_pnm(const GrayImage& img);
std::vector<std::uint8_t> save_pnm(const ColorImage& img);

PnmImage load_pnm_file(const std::string& path);
void save_pnm_file(const std::string& path, const GrayImage& img);
void save_pnm_file(const std::string& path, const ColorImage& img);

/// Collapse a decoded file to grayscale (PPM goes through rgb_to_gray).
GrayImage as_gray(const PnmImage& img);

}  // namespace edgebench
