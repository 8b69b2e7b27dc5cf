"""
Sensitivity to the amount of data and to noise
==============================================

Mean F-measure versus the number of observed signals, then versus the
signal-to-noise ratio. Smaller signal counts reuse a prefix of the same
draws, so the curve reflects data volume and not resampling.
"""

from graphlearn.experiment import SNR_DEFINITION, ExperimentSpec, sweep_signal_count, sweep_snr

spec = ExperimentSpec(graph_model="rbf", n=20, p=100, noise_sigma=0.5,
                      alphas=[0.012], betas=[0.79], instances=10, seed=0)

print("signals  F-measure  edges")
for row in sweep_signal_count(spec, [5, 10, 25, 50, 100, 250, 500]):
    print(f"{row['value']:7d}  {row['f_measure']:9.3f}  {row['learned_edge_count']:5.1f}")

print("\nSNR is", SNR_DEFINITION)
print("SNR dB  F-measure")
for row in sweep_snr(spec, [-5, 0, 5, 10, 20]):
    print(f"{row['value']:6.0f}  {row['f_measure']:9.3f}")
