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

"""Independent oracle for the random-baseline calibration test.

A uniform random answer over n_slots positions matches any fixed believed
position with probability 1/n_slots, independently per question. The average
score over T turns of n users is 100 * X / (n * T) with X ~ Binomial(n*T, 1/n).
This script simulates that directly and cross-checks with exact quantiles.
"""
import numpy as np
from scipy import stats

N_USERS, N_TURNS, REPS = 5, 60, 2_000_000
rng = np.random.default_rng(20240601)
questions = N_USERS * N_TURNS
hits = rng.binomial(questions, 1.0 / N_USERS, size=REPS)
avg = 100.0 * hits / questions
lo, hi = np.quantile(avg, [0.005, 0.995])
print(f"simulated 99% interval: [{lo:.4f}, {hi:.4f}]  mean={avg.mean():.4f}")
d = stats.binom(questions, 1.0 / N_USERS)
print(f"exact quantiles: [{100*d.ppf(0.005)/questions:.4f}, {100*d.ppf(0.995)/questions:.4f}]")
