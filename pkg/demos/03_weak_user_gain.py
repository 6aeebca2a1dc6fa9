#!/usr/bin/env python3
"""Show the weak user beating the Gaussian boundary under TIN decoding.

Gaussian interference is the worst case for a receiver that treats it as
noise.  PAM interference has structure the receiver implicitly exploits, so
for part of the power sweep the weak user's exact rate exceeds the Gaussian
boundary rate.  Channel: (20, 10) dB, orders (5,2), (4,2), (3,3).

Writes demos/out/weak_user_gain.png when matplotlib is available.
"""

from pathlib import Path

import numpy as np

from gbctin import ChannelParams, c2, mi_exact_tin

ch = ChannelParams.from_db(20.0, 10.0)
orders = [(5, 2), (4, 2), (3, 3)]
alphas = np.linspace(0.0, 1.0, 41)

curves = {}
for m1, m2 in orders:
    curves[(m1, m2)] = [mi_exact_tin(2, ch, float(a), m1, m2).value
                        for a in alphas]
boundary = [c2(float(a), ch.snr2) for a in alphas]

print("largest excess of the exact weak-user rate over the Gaussian boundary:")
for (m1, m2), values in curves.items():
    excess = np.array(values) - np.array(boundary)
    k = int(np.argmax(excess))
    print(f"  orders ({m1},{m2}): +{excess[k]:.4f} bits at alpha = "
          f"{alphas[k]:.3f}")

print("\nThe crossover happens at large alpha, where most power serves the")
print("strong user and the weak user's receiver faces mostly structured")
print("interference rather than Gaussian-like noise.")

try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
except ImportError:
    print("matplotlib not installed; skipping the figure")
else:
    fig, ax = plt.subplots(figsize=(7, 5))
    ax.plot(alphas, boundary, "k--", linewidth=1.6, label="Gaussian boundary")
    for (m1, m2), values in curves.items():
        ax.plot(alphas, values, label=f"exact rate, orders ({m1},{m2})")
    ax.set_xlabel("power fraction for user 1")
    ax.set_ylabel("user 2 rate [bits/channel use]")
    ax.grid(True, alpha=0.3)
    ax.legend()
    fig.tight_layout()
    out = Path(__file__).parent / "out" / "weak_user_gain.png"
    out.parent.mkdir(exist_ok=True)
    fig.savefig(out, dpi=160)
    print(f"wrote {out}")
