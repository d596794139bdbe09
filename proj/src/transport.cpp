#include "qsim/transport.hpp"

#include <cstring>
#include <string>

namespace qsim {

InProcessTransport::InProcessTransport(int rank_count)
    : rank_count_(rank_count), barrier_(rank_count) {
    if (rank_count < 1)
        throw DomainError("transport needs at least 1 rank");
}

InProcessTransport::Cell& InProcessTransport::cell_for(int a, int b) {
    const std::uint64_t key =
        (static_cast<std::uint64_t>(std::min(a, b)) << 32) |
        static_cast<std::uint64_t>(std::max(a, b));
    std::lock_guard lock(cells_mutex_);
    auto& slot = cells_[key];
    if (!slot)
        slot = std::make_unique<Cell>();
    return *slot;
}

void InProcessTransport::exchange(int self, int peer,
                                  std::span<const std::byte> send,
                                  std::span<std::byte> recv) {
    if (self == peer || self < 0 || peer < 0 || self >= rank_count_ ||
        peer >= rank_count_)
        throw CommError("invalid exchange between ranks " +
                        std::to_string(self) + " and " + std::to_string(peer));
    Cell& cell = cell_for(self, peer);
    const int side = self < peer ? 0 : 1;

    std::unique_lock lock(cell.m);
    const std::uint64_t my_round = cell.round;
    cell.send[side] = send;
    cell.recv[side] = recv;
    if (++cell.arrived == 2) {
        cell.arrived = 0;
        cell.failed = cell.send[0].size() != cell.recv[1].size() ||
                      cell.send[1].size() != cell.recv[0].size();
        if (!cell.failed) {
            std::memcpy(cell.recv[0].data(), cell.send[1].data(),
                        cell.send[1].size());
            std::memcpy(cell.recv[1].data(), cell.send[0].data(),
                        cell.send[0].size());
        }
        ++cell.round;
        cell.cv.notify_all();
    } else {
        cell.cv.wait(lock, [&] { return cell.round != my_round; });
    }
    if (cell.failed)
        throw CommError("exchange size mismatch between ranks " +
                        std::to_string(self) + " and " + std::to_string(peer));
}

void InProcessTransport::barrier() { barrier_.arrive_and_wait(); }

} // namespace qsim
