# ##############################################################################
#  This file is part of alg2cnf                                                #
#                                                                              #
#  You may use, distribute and modify this code under the                      #
#  terms of the (BSD-like) CeCILL-B license.                                   #
#                                                                              #
#  You should have received a copy of the CeCILL-B license with                #
#  this file. If not, please visit:                                            #
#  https://cecill.info/licences/Licence_CeCILL-B_V1-en.txt (English)           #
#  or https://cecill.info/licences/Licence_CeCILL-B_V1-fr.txt (French)         #
#                                                                              #
# ##############################################################################
"""Plain Python implementations of the corpus functions, independent of the translator.

Every function maps an input bit vector to an output bit vector with the conventions of the
corpus programs: the cells of the `__in` arrays in declaration order, the cells of the
`__out` arrays in declaration order. Byte strings (md4, md5) are bit vectors whose bit 0 is
the most significant bit of byte 0.

>>> lfsr16([1] + [0] * 15).index(1, 1)
16
>>> md5_bits = _to_bits(md_pad(b"abc")[0])
>>> _to_bytes(md5(md5_bits)).hex()
'900150983cd24fb0d6963f7d28e17f72'
"""
import math
import struct
from typing import Callable, Dict, List, Sequence, Tuple

Bits = List[int]
Words = Tuple[int, int, int, int]

MASK32 = 0xFFFFFFFF
BLOCK_SIZE = 64
MD_IV = (0x67452301, 0xEFCDAB89, 0x98BADCFE, 0x10325476)

# exponents of the feedback polynomials, constant term omitted
GEFFE_POLYNOMIALS = ((31, 7), (32, 7, 5, 3, 2, 1), (33, 16, 4, 1))
GEFFE_LENGTH = 200


def _to_bytes(bits: Sequence[int]) -> bytes:
    result = bytearray()
    for start in range(0, len(bits), 8):
        value = 0
        for bit in bits[start : start + 8]:
            value = (value << 1) | bit
        result.append(value)
    return bytes(result)


def _to_bits(data: bytes) -> Bits:
    return [(byte >> (7 - i)) & 1 for byte in data for i in range(8)]


def _register_stream(state: Sequence[int], exponents: Sequence[int], length: int) -> Bits:
    """Bits leaving the top cell of a register whose cell `k - 1` holds the `x^k` term."""
    size = exponents[0]
    taps = [size - 1] + [k - 1 for k in exponents[1:]]
    state = list(state)
    stream = []
    for __ in range(length):
        stream.append(state[-1])
        feedback = 0
        for tap in taps:
            feedback ^= state[tap]
        state = [feedback] + state[:-1]
    return stream


def geffe96(x: Sequence[int]) -> Bits:
    streams = []
    offset = 0
    for exponents in GEFFE_POLYNOMIALS:
        size = exponents[0]
        streams.append(_register_stream(x[offset : offset + size], exponents, GEFFE_LENGTH))
        offset += size
    return [(a & b) ^ (b & c) ^ (a & c) for a, b, c in zip(*streams)]


def _trivium_family(state: Sequence[int], length: int, registers: int) -> Bits:
    # s[1] .. s[n], numbered as in the cipher descriptions
    s = [0] + list(state)
    stream = []
    for __ in range(length):
        t1 = s[66] ^ s[93]
        t2 = s[162] ^ s[177]
        if registers == 2:
            stream.append(t1 ^ t2)
            t1 ^= (s[91] & s[92]) ^ s[171]
            t2 ^= (s[175] & s[176]) ^ s[69]
            s = [0, t2] + s[1:93] + [t1] + s[94:177]
        else:
            t3 = s[243] ^ s[288]
            stream.append(t1 ^ t2 ^ t3)
            t1 ^= (s[91] & s[92]) ^ s[171]
            t2 ^= (s[175] & s[176]) ^ s[264]
            t3 ^= (s[286] & s[287]) ^ s[69]
            s = [0, t3] + s[1:93] + [t1] + s[94:177] + [t2] + s[178:288]
    return stream


def bivium(x: Sequence[int]) -> Bits:
    return _trivium_family(x, 200, registers=2)


def trivium(x: Sequence[int]) -> Bits:
    return _trivium_family(x, 300, registers=3)


def grain(x: Sequence[int]) -> Bits:
    """Grain v1 keystream in sequence form: `b` and `s` grow by one bit per clock."""
    b, s = list(x[:80]), list(x[80:160])
    stream = []
    for i in range(160):
        x0, x1, x2, x3, x4 = s[i + 3], s[i + 25], s[i + 46], s[i + 64], b[i + 63]
        h = (
            x1 ^ x4 ^ (x0 & x3) ^ (x2 & x3) ^ (x3 & x4) ^ (x0 & x1 & x2) ^ (x0 & x2 & x3)
            ^ (x0 & x2 & x4) ^ (x1 & x2 & x4) ^ (x2 & x3 & x4)
        )
        z = h
        for k in (1, 2, 4, 10, 31, 43, 56):
            z ^= b[i + k]
        stream.append(z)
        s.append(s[i + 62] ^ s[i + 51] ^ s[i + 38] ^ s[i + 23] ^ s[i + 13] ^ s[i])
        bb = b[i:]
        b.append(
            s[i] ^ bb[62] ^ bb[60] ^ bb[52] ^ bb[45] ^ bb[37] ^ bb[33] ^ bb[28] ^ bb[21]
            ^ bb[14] ^ bb[9] ^ bb[0]
            ^ (bb[63] & bb[60]) ^ (bb[37] & bb[33]) ^ (bb[15] & bb[9])
            ^ (bb[60] & bb[52] & bb[45]) ^ (bb[33] & bb[28] & bb[21])
            ^ (bb[63] & bb[45] & bb[28] & bb[9]) ^ (bb[60] & bb[52] & bb[37] & bb[33])
            ^ (bb[63] & bb[60] & bb[21] & bb[15])
            ^ (bb[63] & bb[60] & bb[52] & bb[45] & bb[37])
            ^ (bb[33] & bb[28] & bb[21] & bb[15] & bb[9])
            ^ (bb[52] & bb[45] & bb[37] & bb[33] & bb[28] & bb[21])
        )
    return stream


# (size, feedback taps, clocking bit) of the three registers
A5_REGISTERS = ((19, (13, 16, 17, 18), 8), (22, (20, 21), 10), (23, (7, 20, 21, 22), 10))


def a5_1(x: Sequence[int]) -> Bits:
    registers = []
    offset = 0
    for size, __, __ in A5_REGISTERS:
        registers.append(sum(bit << i for i, bit in enumerate(x[offset : offset + size])))
        offset += size
    stream = []
    for __ in range(114):
        clocks = [(r >> clock) & 1 for r, (__, __, clock) in zip(registers, A5_REGISTERS)]
        majority = 1 if sum(clocks) >= 2 else 0
        for i, (size, taps, __) in enumerate(A5_REGISTERS):
            if clocks[i] == majority:
                r = registers[i]
                feedback = 0
                for tap in taps:
                    feedback ^= (r >> tap) & 1
                registers[i] = ((r << 1) & ((1 << size) - 1)) | feedback
        bit = 0
        for r, (size, __, __) in zip(registers, A5_REGISTERS):
            bit ^= (r >> (size - 1)) & 1
        stream.append(bit)
    return stream


def lfsr16(x: Sequence[int]) -> Bits:
    a = list(x)
    while len(a) < 32:
        t = len(a) - 16
        a.append(a[t] ^ a[t + 2] ^ a[t + 3] ^ a[t + 5])
    return a[:32]


def and2(x: Sequence[int]) -> Bits:
    return [x[0] & x[1]]


MAJ3_IV = (1, 0, 0, 1)


def maj3(x: Sequence[int]) -> Bits:
    def majority(p, q, r):
        return 1 if p + q + r >= 2 else 0

    s = list(MAJ3_IV)
    for r in range(3):
        w = x[4 * r : 4 * r + 4]
        s = [majority(s[i], s[(i + 1) % 4], w[i]) ^ w[(i + 2) % 4] for i in range(4)]
    return [u ^ v for u, v in zip(s, MAJ3_IV)]


def md_pad(message: bytes) -> List[bytes]:
    """Merkle-Damgard strengthening of MD4 and MD5: the 64-byte blocks of a message.

    >>> [len(x) for x in md_pad(b"")], len(md_pad(b"x" * 56))
    ([64], 2)
    """
    data = bytes(message) + b"\x80"
    data += b"\x00" * ((56 - len(data)) % BLOCK_SIZE)
    data += struct.pack("<Q", (8 * len(message)) & ((1 << 64) - 1))
    return [data[i : i + BLOCK_SIZE] for i in range(0, len(data), BLOCK_SIZE)]


def _rotl(value: int, amount: int) -> int:
    return ((value << amount) | (value >> (32 - amount))) & MASK32


def md4_compress(state: Words, block: bytes) -> Words:
    x = struct.unpack("<16I", block)
    a, b, c, d = state
    for i in range(48):
        j = i % 16
        if i < 16:
            f, k, add, s = (b & c) | (~b & d), j, 0, (3, 7, 11, 19)[j % 4]
        elif i < 32:
            f = (b & c) | (b & d) | (c & d)
            k, add, s = (j % 4) * 4 + j // 4, 0x5A827999, (3, 5, 9, 13)[j % 4]
        else:
            # word order of the last round: the 4-bit reversal of j
            k = int(format(j, "04b")[::-1], 2)
            f, add, s = b ^ c ^ d, 0x6ED9EBA1, (3, 9, 11, 15)[j % 4]
        a, b, c, d = d, _rotl((a + f + x[k] + add) & MASK32, s), b, c
    return tuple((u + v) & MASK32 for u, v in zip(state, (a, b, c, d)))


MD5_T = [int(abs(math.sin(i + 1)) * 2 ** 32) & MASK32 for i in range(64)]
MD5_SHIFTS = ((7, 12, 17, 22), (5, 9, 14, 20), (4, 11, 16, 23), (6, 10, 15, 21))


def md5_compress(state: Words, block: bytes) -> Words:
    x = struct.unpack("<16I", block)
    a, b, c, d = state
    for i in range(64):
        r = i // 16
        if r == 0:
            f, k = (b & c) | (~b & d), i
        elif r == 1:
            f, k = (d & b) | (~d & c), (5 * i + 1) % 16
        elif r == 2:
            f, k = b ^ c ^ d, (3 * i + 5) % 16
        else:
            f, k = c ^ (b | ~d), (7 * i) % 16
        f &= MASK32
        rotated = _rotl((a + f + MD5_T[i] + x[k]) & MASK32, MD5_SHIFTS[r][i % 4])
        a, b, c, d = d, (b + rotated) & MASK32, b, c
    return tuple((u + v) & MASK32 for u, v in zip(state, (a, b, c, d)))


def md_hash(compress: Callable[[Words, bytes], Words], message: bytes) -> bytes:
    state = MD_IV
    for block in md_pad(message):
        state = compress(state, block)
    return struct.pack("<4I", *state)


def md4(x: Sequence[int]) -> Bits:
    return _to_bits(struct.pack("<4I", *md4_compress(MD_IV, _to_bytes(x))))


def md5(x: Sequence[int]) -> Bits:
    return _to_bits(struct.pack("<4I", *md5_compress(MD_IV, _to_bytes(x))))


REFERENCES = {
    "geffe96": geffe96,
    "bivium": bivium,
    "trivium": trivium,
    "grain": grain,
    "a5_1": a5_1,
    "md4": md4,
    "md5": md5,
    "lfsr16": lfsr16,
    "and2": and2,
    "maj3": maj3,
}  # type: Dict[str, Callable[[Sequence[int]], Bits]]
