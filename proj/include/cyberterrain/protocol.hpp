#pragma once

#include <array>
#include <optional>
#include <string_view>

namespace cyberterrain {

/// Protocols a firewall may block. Declaration order is penalty severity, most severe first.
enum class Protocol { Ftp, Smtp, Http, Ssh };

inline constexpr std::array<Protocol, 4> kAllProtocols{Protocol::Ftp, Protocol::Smtp, Protocol::Http,
                                                       Protocol::Ssh};

/// CVSS attack complexity class.
enum class Complexity { Low, Medium, High };

inline constexpr std::array<Complexity, 3> kAllComplexities{Complexity::Low, Complexity::Medium,
                                                            Complexity::High};

constexpr std::string_view to_token(Protocol p) noexcept {
    switch (p) {
        case Protocol::Ftp: return "ftp";
        case Protocol::Smtp: return "smtp";
        case Protocol::Http: return "http";
        case Protocol::Ssh: return "ssh";
    }
    return "?";
}

constexpr std::string_view to_token(Complexity c) noexcept {
    switch (c) {
        case Complexity::Low: return "low";
        case Complexity::Medium: return "medium";
        case Complexity::High: return "high";
    }
    return "?";
}

constexpr std::optional<Protocol> protocol_from_token(std::string_view token) noexcept {
    for (Protocol p : kAllProtocols)
        if (to_token(p) == token) return p;
    return std::nullopt;
}

constexpr std::optional<Complexity> complexity_from_token(std::string_view token) noexcept {
    for (Complexity c : kAllComplexities)
        if (to_token(c) == token) return c;
    return std::nullopt;
}

constexpr std::size_t index_of(Protocol p) noexcept { return static_cast<std::size_t>(p); }
constexpr std::size_t index_of(Complexity c) noexcept { return static_cast<std::size_t>(c); }

}  // namespace cyberterrain
