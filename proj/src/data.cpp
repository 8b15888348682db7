#include "rider/data.hpp"

#include <cmath>
#include <stdexcept>

namespace rider {

void TimedDataset::validate() const {
    if (n() < 1) throw std::invalid_argument("dataset must contain at least one sample");
    if (outcomes.size() != features.rows()) {
        throw std::invalid_argument("feature rows and outcome length disagree");
    }
    if (!features.allFinite() || !outcomes.allFinite()) {
        throw std::invalid_argument("dataset contains non-finite values");
    }
}

const TimedDataset& Panel::at_time(long long t) const {
    for (const auto& d : datasets) {
        if (d.t == t) return d;
    }
    throw std::out_of_range("no dataset at time " + std::to_string(t));
}

bool Panel::has_time(long long t) const {
    for (const auto& d : datasets) {
        if (d.t == t) return true;
    }
    return false;
}

std::vector<TimedDataset> Panel::window_before(long long t, int K) const {
    std::vector<TimedDataset> window;
    window.reserve(K);
    for (int k = 1; k <= K; ++k) window.push_back(at_time(t - k));
    return window;
}

void Panel::validate() const {
    if (datasets.empty()) throw std::invalid_argument("panel is empty");
    const int d = datasets.front().dim();
    for (std::size_t i = 0; i < datasets.size(); ++i) {
        datasets[i].validate();
        if (datasets[i].dim() != d) {
            throw std::invalid_argument("panel datasets disagree on feature dimension");
        }
        if (i > 0 && datasets[i].t != datasets[i - 1].t + 1) {
            throw std::invalid_argument("panel time indices must be consecutive");
        }
    }
}

} // namespace rider
