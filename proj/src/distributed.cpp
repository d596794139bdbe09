#include "qsim/distributed.hpp"

#include "qsim/detail/pair_math.hpp"
#include "qsim/detail/parallel.hpp"
#include "qsim/kernels.hpp"

#include <barrier>
#include <chrono>
#include <cstring>
#include <string>
#include <thread>

namespace qsim {

const char* strategy_name(Strategy s) {
    switch (s) {
    case Strategy::FullClone: return "full_clone";
    case Strategy::HalfExchange: return "half_exchange";
    case Strategy::PerAmplitude: return "per_amplitude";
    }
    return "?";
}

Strategy strategy_from_name(const std::string& name) {
    if (name == "full_clone") return Strategy::FullClone;
    if (name == "half_exchange") return Strategy::HalfExchange;
    if (name == "per_amplitude") return Strategy::PerAmplitude;
    throw DomainError("unknown strategy '" + name + "'");
}

PartitionPlan partition(int num_qubits, int rank_count_log2,
                        Strategy strategy) {
    if (num_qubits < 1)
        throw DomainError("partition needs at least 1 qubit");
    if (rank_count_log2 < 0 || rank_count_log2 > num_qubits)
        throw DomainError("rank count 2^" + std::to_string(rank_count_log2) +
                          " invalid for " + std::to_string(num_qubits) +
                          " qubits (need 0 <= k <= n)");
    if (strategy == Strategy::HalfExchange && rank_count_log2 == num_qubits)
        throw DomainError("half_exchange needs at least one local qubit");
    return PartitionPlan{num_qubits, rank_count_log2, strategy, 1};
}

bool needs_communication(const PartitionPlan& plan, int target) {
    if (target < 0 || target >= plan.num_qubits)
        throw DomainError("invalid target qubit " + std::to_string(target));
    return target >= plan.local_qubits();
}

int pair_rank(const PartitionPlan& plan, int rank, int target) {
    if (rank < 0 || rank >= plan.rank_count())
        throw DomainError("invalid rank " + std::to_string(rank));
    if (!needs_communication(plan, target))
        throw DomainError("gate on qubit " + std::to_string(target) +
                          " is rank-local; no pair rank exists");
    return rank ^ (1 << (target - plan.local_qubits()));
}

std::uint64_t CommStats::total_messages() const {
    std::uint64_t total = 0;
    for (auto m : messages_sent)
        total += m;
    return total;
}

std::uint64_t CommStats::total_bytes() const {
    std::uint64_t total = 0;
    for (auto b : bytes_sent)
        total += b;
    return total;
}

std::uint64_t CommStats::communicated_gates() const {
    std::uint64_t total = 0;
    for (auto r : exchange_rounds)
        total += r > 0 ? 1 : 0;
    return total;
}

void CommStats::merge(const CommStats& other) {
    if (messages_sent.size() < other.messages_sent.size()) {
        messages_sent.resize(other.messages_sent.size(), 0);
        bytes_sent.resize(other.bytes_sent.size(), 0);
    }
    for (std::size_t r = 0; r < other.messages_sent.size(); ++r) {
        messages_sent[r] += other.messages_sent[r];
        bytes_sent[r] += other.bytes_sent[r];
    }
    exchange_rounds.insert(exchange_rounds.end(), other.exchange_rounds.begin(),
                           other.exchange_rounds.end());
}

std::vector<FlatGateOp> flatten_circuit(const Circuit& circuit,
                                        RegisterKind kind) {
    std::vector<FlatGateOp> ops;
    const int n = circuit.num_qubits;
    const int flat = kind == RegisterKind::DensityMatrix ? 2 * n : n;
    ops.reserve(circuit.ops.size() *
                (kind == RegisterKind::DensityMatrix ? 2 : 1));
    for (const auto& op : circuit.ops) {
        const std::uint64_t mask =
            detail::make_control_mask(flat, op.controls, op.target);
        const GateMatrix g = gate_matrix(op.gate);
        ops.push_back({mask, op.target, g});
        if (kind == RegisterKind::DensityMatrix)
            ops.push_back({mask << n, op.target + n, g.conjugate()});
    }
    return ops;
}

namespace {

std::uint64_t buffer_amps(const PartitionPlan& plan) {
    switch (plan.strategy) {
    case Strategy::FullClone: return plan.local_len();
    case Strategy::HalfExchange: return plan.local_len() / 2;
    case Strategy::PerAmplitude: return plan.block_amps;
    }
    return 0;
}

struct RankCounters {
    std::uint64_t messages = 0;
    std::uint64_t bytes = 0;
    std::vector<std::uint32_t> rounds; // per op
};

template <class T>
void rank_apply_op(RankState& rs, const PartitionPlan& plan,
                   const FlatGateOp& op, Transport& transport,
                   RankCounters& counters, std::uint32_t& rounds_out,
                   int workers) {
    using detail::pair_hi_out;
    using detail::pair_lo_out;

    const int m = plan.local_qubits();
    const std::uint64_t len = plan.local_len();
    const std::uint64_t amp_bytes = rs.local.amp_bytes();
    rounds_out = 0;

    // Controls on rank-id qubits are resolved from the rank number alone;
    // both members of any exchange pair agree on them.
    const std::uint64_t rank_mask = op.control_mask >> m;
    if ((static_cast<std::uint64_t>(rs.rank) & rank_mask) != rank_mask)
        return;
    const std::uint64_t low_mask = op.control_mask & (len - 1);

    T* local = nullptr;
    if constexpr (std::is_same_v<T, float>)
        local = nullptr; // unreachable; see dispatch below
    (void)local;

    auto* amps = [&rs] {
        if constexpr (std::is_same_v<T, std::complex<float>>)
            return rs.local.data32();
        else
            return rs.local.data64();
    }();
    using Scalar = typename T::value_type;

    if (op.target < m) {
        detail::apply_gate_span(amps, m, op.target, low_mask, op.matrix,
                                workers);
        return;
    }

    const int rank_bit = op.target - m;
    const int peer = rs.rank ^ (1 << rank_bit);
    const bool own_lo = ((rs.rank >> rank_bit) & 1) == 0;
    const detail::Mat2<Scalar> m2 = detail::Mat2<Scalar>::from(op.matrix);
    auto* buf = reinterpret_cast<T*>(rs.exchange_buffer.data());
    const auto local_bytes = rs.local.bytes();

    auto combine = [&](std::uint64_t begin, std::uint64_t end,
                       std::uint64_t buf_offset) {
        detail::parallel_chunks(end - begin, workers,
                                [&](std::uint64_t lo, std::uint64_t hi) {
            for (std::uint64_t i = begin + lo; i < begin + hi; ++i) {
                if ((i & low_mask) != low_mask)
                    continue;
                const T mine = amps[i];
                const T theirs = buf[i - buf_offset];
                amps[i] = own_lo ? pair_lo_out(mine, theirs, m2)
                                 : pair_hi_out(theirs, mine, m2);
            }
        });
    };

    switch (plan.strategy) {
    case Strategy::FullClone: {
        transport.exchange(rs.rank, peer, local_bytes,
                           std::span(rs.exchange_buffer.data(),
                                     len * amp_bytes));
        counters.messages += 1;
        counters.bytes += len * amp_bytes;
        rounds_out = 1;
        combine(0, len, 0);
        break;
    }
    case Strategy::HalfExchange: {
        const std::uint64_t half = len / 2;
        for (int round = 0; round < 2; ++round) {
            const std::uint64_t off = round * half;
            transport.exchange(
                rs.rank, peer,
                local_bytes.subspan(off * amp_bytes, half * amp_bytes),
                std::span(rs.exchange_buffer.data(), half * amp_bytes));
            counters.messages += 1;
            counters.bytes += half * amp_bytes;
            ++rounds_out;
            combine(off, off + half, off);
        }
        break;
    }
    case Strategy::PerAmplitude: {
        const std::uint64_t block =
            std::min<std::uint64_t>(std::max<std::uint64_t>(plan.block_amps, 1),
                                    len);
        for (std::uint64_t start = 0; start < len; start += block) {
            const std::uint64_t count = std::min(block, len - start);
            transport.exchange(
                rs.rank, peer,
                local_bytes.subspan(start * amp_bytes, count * amp_bytes),
                std::span(rs.exchange_buffer.data(), count * amp_bytes));
            counters.messages += 1;
            counters.bytes += count * amp_bytes;
            ++rounds_out;
            combine(start, start + count, start);
        }
        break;
    }
    }
}

void validate_ranks(const std::vector<RankState>& ranks,
                    const PartitionPlan& plan) {
    if (static_cast<int>(ranks.size()) != plan.rank_count())
        throw DomainError("rank states do not match the plan: have " +
                          std::to_string(ranks.size()) + ", plan needs " +
                          std::to_string(plan.rank_count()));
    for (std::size_t r = 0; r < ranks.size(); ++r) {
        if (ranks[r].rank != static_cast<int>(r) ||
            ranks[r].local.size() != plan.local_len())
            throw DomainError("rank state " + std::to_string(r) +
                              " does not match the plan");
        const std::uint64_t needed =
            buffer_amps(plan) * ranks[r].local.amp_bytes();
        if (ranks[r].exchange_buffer.size() < needed)
            throw DomainError("rank " + std::to_string(r) +
                              " exchange buffer smaller than the strategy "
                              "requires");
    }
}

} // namespace

std::vector<RankState> make_ranks(const PartitionPlan& plan,
                                  Precision precision) {
    std::vector<RankState> ranks;
    const int count = plan.rank_count();
    ranks.reserve(count);
    for (int r = 0; r < count; ++r) {
        RankState rs;
        rs.rank = r;
        rs.local = AmpVector(precision, plan.local_len());
        rs.exchange_buffer.resize(buffer_amps(plan) * amp_bytes(precision));
        ranks.push_back(std::move(rs));
    }
    init_ranks_zero(ranks);
    return ranks;
}

void init_ranks_zero(std::vector<RankState>& ranks) {
    for (auto& rs : ranks)
        rs.local.fill_zero();
    if (!ranks.empty())
        ranks[0].local.set(0, Amp{1.0, 0.0});
}

Register gather(const std::vector<RankState>& ranks, const PartitionPlan& plan,
                RegisterKind kind) {
    validate_ranks(ranks, plan);
    const int n = kind == RegisterKind::DensityMatrix ? plan.num_qubits / 2
                                                      : plan.num_qubits;
    Register reg(n, kind, ranks[0].local.precision());
    auto out = reg.amps().bytes();
    std::size_t offset = 0;
    for (const auto& rs : ranks) {
        const auto in = rs.local.bytes();
        std::memcpy(out.data() + offset, in.data(), in.size());
        offset += in.size();
    }
    return reg;
}

CommStats run_gate_ops(std::vector<RankState>& ranks,
                       const PartitionPlan& plan,
                       std::span<const FlatGateOp> ops, Transport& transport,
                       int workers, RunObserver* observer,
                       double* gate_seconds) {
    validate_ranks(ranks, plan);
    if (transport.rank_count() != plan.rank_count())
        throw DomainError("transport has " +
                          std::to_string(transport.rank_count()) +
                          " ranks, plan needs " +
                          std::to_string(plan.rank_count()));
    for (const auto& op : ops) {
        if (op.target < 0 || op.target >= plan.num_qubits)
            throw DomainError("gate target " + std::to_string(op.target) +
                              " outside the " +
                              std::to_string(plan.num_qubits) +
                              "-qubit plan");
        if (op.control_mask >> plan.num_qubits)
            throw DomainError("gate control outside the plan");
    }

    const int count = plan.rank_count();
    std::vector<RankCounters> counters(count);
    for (auto& c : counters)
        c.rounds.assign(ops.size(), 0);
    std::vector<std::exception_ptr> errors(count);

    using Clock = std::chrono::steady_clock;
    Clock::time_point t0, t1;
    std::barrier ready(count + 1, [&]() noexcept {
        if (observer)
            observer->on_clock_start();
        t0 = Clock::now();
    });
    std::barrier done(count + 1, [&]() noexcept {
        t1 = Clock::now();
        if (observer)
            observer->on_clock_stop();
    });

    auto rank_main = [&](int r) {
        ready.arrive_and_wait();
        try {
            for (std::size_t i = 0; i < ops.size(); ++i) {
                if (ranks[r].local.precision() == Precision::Single)
                    rank_apply_op<std::complex<float>>(
                        ranks[r], plan, ops[i], transport, counters[r],
                        counters[r].rounds[i], workers);
                else
                    rank_apply_op<std::complex<double>>(
                        ranks[r], plan, ops[i], transport, counters[r],
                        counters[r].rounds[i], workers);
                transport.barrier();
            }
            if (r == 0 && observer)
                observer->on_circuit_done();
            transport.barrier(); // ensure distributed work finished
            if (r == 0 && observer)
                observer->on_post_barrier();
        } catch (...) {
            errors[r] = std::current_exception();
        }
        done.arrive_and_wait();
    };

    std::vector<std::thread> threads;
    threads.reserve(count);
    for (int r = 0; r < count; ++r)
        threads.emplace_back(rank_main, r);
    ready.arrive_and_wait();
    done.arrive_and_wait();
    for (auto& th : threads)
        th.join();
    for (auto& err : errors)
        if (err)
            std::rethrow_exception(err);

    if (gate_seconds)
        *gate_seconds = std::chrono::duration<double>(t1 - t0).count();

    CommStats stats;
    stats.messages_sent.resize(count);
    stats.bytes_sent.resize(count);
    stats.exchange_rounds.assign(ops.size(), 0);
    for (int r = 0; r < count; ++r) {
        stats.messages_sent[r] = counters[r].messages;
        stats.bytes_sent[r] = counters[r].bytes;
        for (std::size_t i = 0; i < ops.size(); ++i)
            stats.exchange_rounds[i] =
                std::max(stats.exchange_rounds[i], counters[r].rounds[i]);
    }
    return stats;
}

CommStats apply_gate_distributed(std::vector<RankState>& ranks,
                                 const PartitionPlan& plan,
                                 const std::vector<int>& controls, int target,
                                 const GateMatrix& g, Transport& transport,
                                 int workers) {
    const std::uint64_t mask =
        detail::make_control_mask(plan.num_qubits, controls, target);
    const FlatGateOp op{mask, target, g};
    return run_gate_ops(ranks, plan, std::span(&op, 1), transport, workers);
}

DistributedRunResult run_circuit_distributed(const Circuit& circuit,
                                             const PartitionPlan& plan,
                                             Transport& transport,
                                             Precision precision,
                                             RegisterKind kind, int workers) {
    const int flat = kind == RegisterKind::DensityMatrix
                         ? 2 * circuit.num_qubits
                         : circuit.num_qubits;
    if (flat != plan.num_qubits)
        throw DomainError("circuit needs a " + std::to_string(flat) +
                          "-qubit plan, got " +
                          std::to_string(plan.num_qubits));
    DistributedRunResult result;
    result.ranks = make_ranks(plan, precision);
    const auto ops = flatten_circuit(circuit, kind);
    result.stats = run_gate_ops(result.ranks, plan, ops, transport, workers,
                                nullptr, &result.gate_seconds);
    return result;
}

namespace {

unsigned __int128 modeled_bytes_128(int num_qubits, int rank_count_log2,
                                    Strategy strategy, Precision precision,
                                    std::uint64_t block_amps) {
    const int m = num_qubits - rank_count_log2;
    const unsigned __int128 local = static_cast<unsigned __int128>(1) << m;
    const unsigned __int128 ab = amp_bytes(precision);
    switch (strategy) {
    case Strategy::FullClone: return ab * local * 2;
    case Strategy::HalfExchange: return ab * local + ab * (local / 2);
    case Strategy::PerAmplitude: return ab * (local + block_amps);
    }
    return 0;
}

} // namespace

std::uint64_t modeled_bytes_per_rank(int num_qubits, int rank_count_log2,
                                     Strategy strategy, Precision precision,
                                     std::uint64_t block_amps) {
    if (num_qubits < 1 || rank_count_log2 < 0 || rank_count_log2 > num_qubits)
        throw DomainError("invalid qubit/rank combination");
    const auto bytes = modeled_bytes_128(num_qubits, rank_count_log2, strategy,
                                         precision, block_amps);
    if (bytes > ~std::uint64_t{0})
        throw DomainError("modeled byte count overflows 64 bits");
    return static_cast<std::uint64_t>(bytes);
}

int max_qubits(const MemoryModel& model, int rank_count_log2) {
    if (rank_count_log2 < 0)
        throw DomainError("rank count exponent must be non-negative");
    if (model.node_bytes <= model.overhead_bytes)
        return 0;
    const unsigned __int128 budget = model.node_bytes - model.overhead_bytes;
    const int min_local = model.strategy == Strategy::HalfExchange ? 1 : 0;
    int best = 0;
    for (int n = std::max(1, rank_count_log2 + min_local);
         n <= rank_count_log2 + 80; ++n) {
        if (modeled_bytes_128(n, rank_count_log2, model.strategy,
                              model.precision, 1) <= budget)
            best = n;
        else
            break;
    }
    return best;
}

} // namespace qsim
