#include "relaysim/trace.hpp"

#include <bit>
#include <cstring>

namespace relaysim {

namespace {

void fnv(std::uint64_t& h, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) {
        h ^= (v >> (8 * i)) & 0xFF;
        h *= 0x100000001b3ull;
    }
}

}  // namespace

void TraceLog::push(const TraceRecord& r) {
    ++count_;
    fnv(digest_, static_cast<std::uint64_t>(r.kind));
    fnv(digest_, r.t);
    fnv(digest_, r.node);
    switch (r.kind) {
        case TraceKind::TxStart:
            fnv(digest_, static_cast<std::uint64_t>(r.frame_kind));
            fnv(digest_, r.src);
            fnv(digest_, r.dst);
            fnv(digest_, r.duration_us);
            fnv(digest_, r.exchange);
            fnv(digest_, r.seq);
            fnv(digest_, r.contention);
            fnv(digest_, r.nav_quiet_until);
            fnv(digest_, r.nav_set_by);
            fnv(digest_, r.nav_setter_blacklisted);
            break;
        case TraceKind::Decode:
            fnv(digest_, static_cast<std::uint64_t>(r.frame_kind));
            fnv(digest_, r.src);
            fnv(digest_, r.dst);
            fnv(digest_, r.exchange);
            break;
        case TraceKind::Detection:
        case TraceKind::BlacklistAdd:
            fnv(digest_, r.other);
            break;
        case TraceKind::RelaySelect:
            fnv(digest_, r.other);
            fnv(digest_, std::bit_cast<std::uint64_t>(r.sf));
            break;
        case TraceKind::Deliver:
            fnv(digest_, r.other);
            fnv(digest_, r.seq);
            break;
        case TraceKind::PayloadDrop:
            fnv(digest_, r.seq);
            break;
    }
    if (keep_) records_.push_back(r);
}

}  // namespace relaysim
