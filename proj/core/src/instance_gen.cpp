#include "bbss/instance_gen.hpp"

#include <algorithm>
#include <atomic>
#include <optional>
#include <thread>

namespace bbss {

namespace {

/// Alternating without-replacement draws over the class pools. Pools are
/// sorted by id first, so the outcome depends only on (profiles, seed).
class StationSampler {
public:
    StationSampler(std::span<const StationProfile> profiles, StationId depot_id,
                   std::uint64_t seed)
        : rng_(seed) {
        for (const auto& p : profiles) {
            if (p.station_id == depot_id) {
                continue;  // the depot never enters an instance
            }
            pool_of(p.cls).push_back(p);
        }
        for (auto* pool : {&sources_, &sinks_, &neutrals_}) {
            std::sort(pool->begin(), pool->end(),
                      [](const StationProfile& a, const StationProfile& b) {
                          return a.station_id < b.station_id;
                      });
        }
    }

    std::size_t eligible() const {
        return sources_.size() + sinks_.size() + neutrals_.size();
    }

    /// The k-th draw wants a source on even k and a sink on odd k; an empty
    /// pool defers to the other, then to the neutrals.
    std::optional<StationProfile> draw_next() {
        const bool want_source = draw_count_++ % 2 == 0;
        auto& preferred = want_source ? sources_ : sinks_;
        auto& other = want_source ? sinks_ : sources_;
        if (!preferred.empty()) {
            return take(preferred);
        }
        if (!other.empty()) {
            return take(other);
        }
        if (!neutrals_.empty()) {
            return take(neutrals_);
        }
        return std::nullopt;
    }

    /// Replacement draw from one specific class pool.
    std::optional<StationProfile> redraw(StationClass cls) {
        auto& pool = pool_of(cls);
        if (pool.empty()) {
            return std::nullopt;
        }
        return take(pool);
    }

private:
    std::vector<StationProfile>& pool_of(StationClass cls) {
        switch (cls) {
            case StationClass::source: return sources_;
            case StationClass::sink: return sinks_;
            case StationClass::neutral: return neutrals_;
        }
        return neutrals_;
    }

    StationProfile take(std::vector<StationProfile>& pool) {
        const std::size_t i = uniform_index(rng_, pool.size());
        const StationProfile chosen = pool[i];
        pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(i));
        return chosen;
    }

    std::mt19937_64 rng_;
    std::vector<StationProfile> sources_;
    std::vector<StationProfile> sinks_;
    std::vector<StationProfile> neutrals_;
    std::size_t draw_count_ = 0;
};

DistanceMatrix slice_matrix(const DistanceMatrix& full, StationId depot_id,
                            std::span<const InstanceStation> stations) {
    std::vector<std::size_t> pick;
    pick.reserve(stations.size() + 1);
    const auto depot_idx = full.index_of(depot_id);
    if (!depot_idx) {
        throw GenerationError("depot " + std::to_string(depot_id) +
                              " is missing from the precomputed matrix");
    }
    pick.push_back(*depot_idx);
    for (const auto& s : stations) {
        const auto idx = full.index_of(s.station_id);
        if (!idx) {
            throw GenerationError("station " + std::to_string(s.station_id) +
                                  " is missing from the precomputed matrix");
        }
        pick.push_back(*idx);
    }
    DistanceMatrix out;
    const std::size_t n = pick.size();
    out.ids.reserve(n);
    for (const std::size_t idx : pick) {
        out.ids.push_back(full.ids[idx]);
    }
    out.meters.resize(n * n);
    out.seconds.resize(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            out.meters[i * n + j] = full.meters_at(pick[i], pick[j]);
            out.seconds[i * n + j] = full.seconds_at(pick[i], pick[j]);
        }
    }
    return out;
}

std::string date_name(const CivilTime& t) {
    return std::to_string(t.date_key());
}

}  // namespace

std::vector<StationId> sample_stations(std::span<const StationProfile> profiles, int size,
                                       StationId depot_id, std::uint64_t seed) {
    if (size < 1) {
        throw std::invalid_argument("sample size must be at least 1");
    }
    StationSampler sampler(profiles, depot_id, seed);
    if (static_cast<std::size_t>(size) > sampler.eligible()) {
        throw std::invalid_argument("sample size " + std::to_string(size) + " exceeds the " +
                                    std::to_string(sampler.eligible()) +
                                    " eligible stations");
    }
    std::vector<StationId> out;
    out.reserve(static_cast<std::size_t>(size));
    for (int k = 0; k < size; ++k) {
        out.push_back(sampler.draw_next()->station_id);
    }
    return out;
}

int compute_target(int current, int disp, int capacity) {
    if (current < 0 || current > capacity) {
        throw std::invalid_argument("current bikes must lie in [0, capacity]");
    }
    return std::clamp(current + disp, 0, capacity);
}

Instance generate_instance(const Snapshot& snapshot, std::span<const StationProfile> profiles,
                           const MatrixSource& matrix_source, const GenerateParams& params) {
    if (params.size < 1) {
        throw GenerationError("instance size must be at least 1");
    }
    if (params.vehicles.count() < 1) {
        throw GenerationError("an instance needs at least one vehicle");
    }
    StationSampler sampler(profiles, params.depot_id, params.seed);
    if (static_cast<std::size_t>(params.size) > sampler.eligible()) {
        throw GenerationError("requested " + std::to_string(params.size) +
                              " stations but only " + std::to_string(sampler.eligible()) +
                              " are profiled and eligible");
    }

    Instance inst;
    inst.name = params.name.empty() ? date_name(snapshot.taken_at) : params.name;
    inst.depot_id = params.depot_id;
    inst.vehicles = params.vehicles;

    std::vector<const StationObservation*> chosen_obs;
    auto usable_here = [&](StationId id) -> const StationObservation* {
        const StationObservation* obs = snapshot.find(id);
        if (obs == nullptr || !is_usable(*obs, params.operational_status)) {
            return nullptr;
        }
        return obs;
    };

    for (int k = 0; k < params.size; ++k) {
        auto profile = sampler.draw_next();
        if (!profile) {
            throw GenerationError("station pools exhausted with " +
                                  std::to_string(params.size - k) + " draws still needed");
        }
        const StationObservation* obs = usable_here(profile->station_id);
        while (obs == nullptr) {
            // Not observable at this snapshot: replace from the same pool.
            const StationClass cls = profile->cls;
            profile = sampler.redraw(cls);
            if (!profile) {
                throw GenerationError("pool of " + to_string(cls) +
                                      " stations exhausted during replacement; " +
                                      std::to_string(params.size - k) + " draws still needed");
            }
            obs = usable_here(profile->station_id);
        }

        InstanceStation s;
        s.station_id = profile->station_id;
        s.capacity = usable_capacity(*obs).usable_capacity;
        s.current = obs->available_bikes;
        s.target = compute_target(s.current, profile->disp, s.capacity);
        inst.stations.push_back(s);
        chosen_obs.push_back(obs);
    }

    if (matrix_source.full != nullptr) {
        inst.matrix = slice_matrix(*matrix_source.full, params.depot_id, inst.stations);
    } else {
        const StationObservation* depot_obs = snapshot.find(params.depot_id);
        if (depot_obs == nullptr) {
            throw GenerationError("depot " + std::to_string(params.depot_id) +
                                  " is not present in the snapshot");
        }
        std::vector<StationObservation> for_matrix;
        for_matrix.reserve(chosen_obs.size() + 1);
        for_matrix.push_back(*depot_obs);
        for (const auto* obs : chosen_obs) {
            for_matrix.push_back(*obs);
        }
        inst.matrix =
            build_matrix(for_matrix, params.depot_id, matrix_source.provider,
                         matrix_source.cache);
    }
    return inst;
}

BatchResult generate_batch_from(std::span<const Snapshot> midnight_snapshots,
                                std::span<const StationProfile> profiles,
                                const MatrixSource& matrix_source, const BatchParams& params) {
    struct Task {
        const Snapshot* snapshot;
        int size;
    };
    std::vector<Task> tasks;
    tasks.reserve(midnight_snapshots.size() * params.sizes.size());
    for (const Snapshot& snap : midnight_snapshots) {
        for (const int size : params.sizes) {
            tasks.push_back({&snap, size});
        }
    }

    std::vector<std::optional<Instance>> slots(tasks.size());
    std::vector<std::string> errors(tasks.size());
    std::atomic<std::size_t> next{0};

    auto worker = [&] {
        for (std::size_t i = next.fetch_add(1); i < tasks.size(); i = next.fetch_add(1)) {
            const Task& task = tasks[i];
            GenerateParams gp;
            gp.depot_id = params.depot_id;
            gp.vehicles = params.vehicles;
            gp.size = task.size;
            gp.operational_status = params.operational_status;
            gp.seed = derive_instance_seed(params.seed, task.snapshot->taken_at.date_key(),
                                           task.size);
            gp.name = std::to_string(task.snapshot->taken_at.date_key()) + "-n" +
                      std::to_string(task.size) + "-s" + std::to_string(params.seed);
            try {
                slots[i] = generate_instance(*task.snapshot, profiles, matrix_source, gp);
            } catch (const std::exception& e) {
                errors[i] = gp.name + ": " + e.what();
            }
        }
    };

    const int jobs = std::max(1, params.jobs);
    if (jobs == 1 || tasks.size() <= 1) {
        worker();
    } else {
        std::vector<std::thread> threads;
        threads.reserve(static_cast<std::size_t>(jobs));
        for (int t = 0; t < jobs; ++t) {
            threads.emplace_back(worker);
        }
        for (auto& thread : threads) {
            thread.join();
        }
    }

    BatchResult result;
    for (std::size_t i = 0; i < tasks.size(); ++i) {
        if (slots[i]) {
            result.instances.push_back(std::move(*slots[i]));
        } else {
            result.errors.push_back(errors[i]);
        }
    }
    return result;
}

}  // namespace bbss
