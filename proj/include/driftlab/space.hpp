#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "driftlab/config.hpp"
#include "driftlab/types.hpp"

namespace driftlab {

// mu(B(x, r)) with d mu = e^{2 x_1} dx. Closed form for n = 1, otherwise a
// 1-D integral over the drift coordinate times the (n-1)-ball cross-section.
double mu_ball(const Point& x, double r);
double log_mu_ball(const Point& x, double r);

// Volume of the unit ball in R^m (m >= 0).
double unit_ball_volume(int m);

enum class RegionKind { OmegaEta, SigmaEta, EuclideanBall, Box };

const char* region_kind_name(RegionKind k);

class Region {
public:
    // {eta < x_1 < eta + 1, x'/sqrt(eta) in B/2}, B = B(ball_center, ball_radius) in R^{n-1}.
    static Region omega(int n, double eta, std::vector<double> ball_center = {}, double ball_radius = 1);
    // {eta - 1 < x_1 < eta, sqrt(eta) < x_i < 2 sqrt(eta), i >= 2}
    static Region sigma(int n, double eta);
    static Region ball(const Point& center, double radius);
    static Region box(const Point& lo, const Point& hi);

    static Region from_config(const ConfigText& cfg, const std::string& prefix = "");
    static Region from_text(const std::string& text);
    std::string to_text() const;

    RegionKind kind() const { return kind_; }
    int dim() const { return n_; }
    double eta() const { return eta_; }
    const std::vector<double>& ball_center() const { return bc_; }
    double ball_radius() const { return br_; }
    const Point& center() const { return center_; }
    double radius() const { return radius_; }

    bool contains(const Point& x) const;
    // Axis-aligned bounding box.
    Point lower() const;
    Point upper() const;

    double measure() const;
    double log_measure() const;

    // Orthogonal cross-section as a ball (Omega) or box (Sigma, Box).
    bool cross_section_is_ball() const { return kind_ == RegionKind::OmegaEta; }

private:
    void validate() const;
    RegionKind kind_ = RegionKind::EuclideanBall;
    int n_ = 1;
    double eta_ = 0;
    std::vector<double> bc_;
    double br_ = 1;
    Point center_, lo_, hi_;
    double radius_ = 1;
};

double region_measure(const Region& R);

enum class SampleScheme { grid, quasi_random };

// Deterministic list of m points in R. The grid scheme takes cell midpoints
// of the coarsest tensor grid over the bounding box with at least m interior
// midpoints and keeps m of them evenly spread.
std::vector<Point> sample_region(const Region& R, int m, SampleScheme scheme, std::uint64_t seed = 1);

// Maps coordinates for a general drift vector v onto the normalized frame
// (v = e_1): reflect v/|v| onto e_1, then scale by |v|. The drift Laplacian
// for v becomes |v|^2 times the normalized one.
class DriftFrame {
public:
    explicit DriftFrame(const std::vector<double>& v);
    Point to_normalized(const Point& x) const;
    Point from_normalized(const Point& z) const;
    double scale() const { return norm_; }

private:
    std::vector<double> h_;  // Householder vector (empty when v is already along e_1)
    double norm_ = 1;
};

}  // namespace driftlab
