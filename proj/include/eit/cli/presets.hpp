#pragma once

#include <atomic>
#include <exception>
#include <functional>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "eit/cli/config.hpp"
#include "eit/cli/output.hpp"

namespace eit::cli {

struct RunContext {
    int jobs = 1;
};

struct ModelOutput {
    std::vector<Table> tables;
    json summary = json::object();
    std::vector<std::string> warnings;
};

struct Model {
    std::string name;
    std::string description;
    json defaults;  // every parameter, so the resolved set is always explicit
    std::function<ModelOutput(const json&, const RunContext&)> run;
};

struct Preset {
    std::string name;
    std::string description;
    std::string model;
    json overrides;
};

const std::vector<Model>& models();
const std::vector<Preset>& presets();
const Model& find_model(const std::string& name);
const Preset& find_preset(const std::string& name);

// Model defaults with the preset's overrides applied.
json preset_parameters(const Preset& p);

// Runs fn(0..n-1) on up to jobs threads. The first exception is rethrown.
inline void parallel_for(size_t n, int jobs, const std::function<void(size_t)>& fn)
{
    size_t workers = std::min<size_t>(n, size_t(std::max(1, jobs)));
    if (workers <= 1) {
        for (size_t i = 0; i < n; ++i)
            fn(i);
        return;
    }
    std::atomic<size_t> next{0};
    std::exception_ptr error;
    std::mutex mu;
    std::vector<std::thread> pool;
    for (size_t w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (size_t i = next++; i < n; i = next++) {
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> g(mu);
                    if (!error)
                        error = std::current_exception();
                    next = n;
                }
            }
        });
    for (std::thread& t : pool)
        t.join();
    if (error)
        std::rethrow_exception(error);
}

}  // namespace eit::cli
