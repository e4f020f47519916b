#pragma once

#include <cstdint>
#include <vector>

#include "rsteg/code/rs.hpp"

// Byte-stream framing on top of single RS blocks: streams are cut into
// chunks of at most max_data() symbols (the tail chunk is shortened) and
// each chunk is encoded/decoded independently.

namespace rsteg {

inline std::size_t rs_chunk_count(std::size_t nbytes, const RsCode& code) {
    std::size_t nd = code.max_data();
    return (nbytes + nd - 1) / nd;
}

// Concatenated parity of all chunks, nparity bytes per chunk. Used when the
// checks travel separately from the data they protect.
inline std::vector<std::uint8_t> rs_parity_stream(const std::vector<std::uint8_t>& data,
                                                  const RsCode& code) {
    std::vector<std::uint8_t> out;
    std::size_t nd = code.max_data();
    for (std::size_t off = 0; off < data.size(); off += nd) {
        std::size_t len = data.size() - off < nd ? data.size() - off : nd;
        std::vector<std::uint8_t> chunk(data.begin() + static_cast<std::ptrdiff_t>(off),
                                        data.begin() + static_cast<std::ptrdiff_t>(off + len));
        auto par = code.parity(chunk);
        out.insert(out.end(), par.begin(), par.end());
    }
    return out;
}

struct RsStreamResult {
    std::vector<std::uint8_t> data;
    int failures = 0;  // chunks the decoder could not repair
    int corrected = 0; // symbols fixed across all chunks
};

// Repair a data stream with its separate parity stream. Failed chunks keep
// their received bytes.
inline RsStreamResult rs_correct_stream(const std::vector<std::uint8_t>& data,
                                        const std::vector<std::uint8_t>& parity,
                                        const RsCode& code) {
    std::size_t nchunks = rs_chunk_count(data.size(), code);
    if (parity.size() != nchunks * static_cast<std::size_t>(code.nparity))
        throw Error("rs: parity stream length mismatch");
    RsStreamResult out;
    out.data = data;
    std::size_t nd = code.max_data();
    for (std::size_t c = 0; c < nchunks; ++c) {
        std::size_t off = c * nd;
        std::size_t len = data.size() - off < nd ? data.size() - off : nd;
        std::vector<std::uint8_t> chunk(data.begin() + static_cast<std::ptrdiff_t>(off),
                                        data.begin() + static_cast<std::ptrdiff_t>(off + len));
        std::vector<std::uint8_t> par(
            parity.begin() + static_cast<std::ptrdiff_t>(c * code.nparity),
            parity.begin() + static_cast<std::ptrdiff_t>((c + 1) * code.nparity));
        auto dec = code.decode(chunk, par);
        if (dec.ok) {
            std::copy(dec.data.begin(), dec.data.end(),
                      out.data.begin() + static_cast<std::ptrdiff_t>(off));
            out.corrected += dec.corrected;
        } else {
            ++out.failures;
        }
    }
    return out;
}

// Systematic codeword stream (data followed by parity, per chunk). Used when
// the whole codeword is the payload.
inline std::vector<std::uint8_t> rs_encode_stream(const std::vector<std::uint8_t>& data,
                                                  const RsCode& code) {
    std::vector<std::uint8_t> out;
    std::size_t nd = code.max_data();
    for (std::size_t off = 0; off < data.size(); off += nd) {
        std::size_t len = data.size() - off < nd ? data.size() - off : nd;
        std::vector<std::uint8_t> chunk(data.begin() + static_cast<std::ptrdiff_t>(off),
                                        data.begin() + static_cast<std::ptrdiff_t>(off + len));
        auto par = code.parity(chunk);
        out.insert(out.end(), chunk.begin(), chunk.end());
        out.insert(out.end(), par.begin(), par.end());
    }
    return out;
}

inline std::size_t rs_encoded_size(std::size_t nbytes, const RsCode& code) {
    return nbytes + rs_chunk_count(nbytes, code) * static_cast<std::size_t>(code.nparity);
}

inline RsStreamResult rs_decode_stream(const std::vector<std::uint8_t>& codewords,
                                       std::size_t data_len, const RsCode& code) {
    if (codewords.size() != rs_encoded_size(data_len, code))
        throw Error("rs: codeword stream length mismatch");
    RsStreamResult out;
    out.data.reserve(data_len);
    std::size_t nd = code.max_data();
    std::size_t pos = 0;
    for (std::size_t off = 0; off < data_len; off += nd) {
        std::size_t len = data_len - off < nd ? data_len - off : nd;
        std::vector<std::uint8_t> chunk(
            codewords.begin() + static_cast<std::ptrdiff_t>(pos),
            codewords.begin() + static_cast<std::ptrdiff_t>(pos + len));
        pos += len;
        std::vector<std::uint8_t> par(
            codewords.begin() + static_cast<std::ptrdiff_t>(pos),
            codewords.begin() + static_cast<std::ptrdiff_t>(pos + code.nparity));
        pos += static_cast<std::size_t>(code.nparity);
        auto dec = code.decode(chunk, par);
        if (!dec.ok) ++out.failures;
        out.corrected += dec.corrected;
        out.data.insert(out.data.end(), dec.data.begin(), dec.data.end());
    }
    return out;
}

} // namespace rsteg
