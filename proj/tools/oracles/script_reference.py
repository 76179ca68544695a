# Copyright 2026 The pickstuff Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Reference implementation of the seeded event-script generator.

Written independently from the C++ code, directly from the documented stream
layout and draw order, and used to freeze golden scripts under tests/golden/.

    python3 script_reference.py --users 5 --mode finite --seed 7 --turn 3
"""
import argparse
import json

M32 = 0xFFFFFFFF


def philox4x32_10(ctr, key):
    c, k = list(ctr), list(key)
    for r in range(10):
        if r:
            k = [(k[0] + 0x9E3779B9) & M32, (k[1] + 0xBB67AE85) & M32]
        p0 = 0xD2511F53 * c[0]
        p1 = 0xCD9E8D57 * c[2]
        c = [((p1 >> 32) ^ c[1] ^ k[0]) & M32, p1 & M32, ((p0 >> 32) ^ c[3] ^ k[1]) & M32, p0 & M32]
    return c


def split(x):
    return [x & M32, (x >> 32) & M32]


def turn_seed(master, turn):
    out = philox4x32_10(split(turn) + [0, 0], split(master))
    return (out[1] << 32) | out[0]


class Stream:
    def __init__(self, seed, stream_id=0):
        self.key = split(seed)
        self.stream_id = stream_id
        self.block = 0
        self.words = []

    def u32(self):
        if not self.words:
            self.words = philox4x32_10(split(self.block) + [self.stream_id, 0], self.key)
            self.block += 1
        return self.words.pop(0)

    def u64(self):
        hi = self.u32()
        return (hi << 32) | self.u32()

    def below(self, bound):
        threshold = ((1 << 32) - bound) % bound
        while True:
            x = self.u32()
            if x >= threshold:
                return x % bound

    def unit(self):
        return (self.u64() >> 11) * 2.0 ** -53

    def permutation(self, n):
        perm = list(range(n))
        for i in range(n - 1, 0, -1):
            j = self.below(i + 1)
            perm[i], perm[j] = perm[j], perm[i]
        return perm


def generate(n, mode, smin, smax, p, staleness, master, turn):
    rng = Stream(turn_seed(master, turn))
    events = []
    order = rng.permutation(n)
    arrived = set()
    hist = 1
    for u in order:
        s = smin + rng.below(smax - smin + 1)
        obs = []
        for v in range(n):
            if v in arrived:
                continue
            if not rng.unit() < p:
                continue
            slot = rng.below(s + 1)
            if mode == "zero":
                obs.append((slot, {"event": "monitor_visit", "user": v}))
            else:
                cap = min(hist + slot, staleness)
                k = 1 if cap < 2 else 2 + rng.below(cap - 1)
                obs.append((slot, {"event": "snapshot_view", "user": v, "k": k}))
        for slot in range(s + 1):
            events += [e for (at, e) in obs if at == slot]
            if slot < s:
                events.append({"event": "shuffle", "perm": rng.permutation(n)})
        events.append({"event": "arrival", "user": u})
        arrived.add(u)
        hist += s + 1
    header = {"type": "script", "version": 1, "turn_index": turn, "turn_seed": turn_seed(master, turn),
              "config": {"n_users": n, "mode": mode, "shuffles_min": smin, "shuffles_max": smax,
                         "p_observe": p, "max_staleness": staleness, "master_seed": master}}
    dump = lambda o: json.dumps(o, separators=(",", ":"))
    return "".join(dump(x) + "\n" for x in [header] + events)


if __name__ == "__main__":
    ap = argparse.ArgumentParser()
    ap.add_argument("--users", type=int, default=5)
    ap.add_argument("--mode", default="zero")
    ap.add_argument("--shuffles-min", type=int, default=1)
    ap.add_argument("--shuffles-max", type=int, default=3)
    ap.add_argument("--p-observe", type=float, default=0.3)
    ap.add_argument("--max-staleness", type=int, default=6)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--turn", type=int, default=0)
    a = ap.parse_args()
    print(generate(a.users, a.mode, a.shuffles_min, a.shuffles_max, a.p_observe, a.max_staleness,
                   a.seed, a.turn), end="")
