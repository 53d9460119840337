"""Interpolating Nadaraya-Watson classifier with singular kernel |x - x_i|^-beta."""

from ._nwinterp import (
    AgreementReport,
    KsReport,
    ScoreResult,
    TailReport,
    TrainingSet,
    add_gaussian_input_noise,
    beta_sweep,
    catastrophic_mass_bound,
    exp_partial_sum_tail,
    flip_labels,
    knn_agreement_unit_cube,
    knn_predict,
    load_idx,
    mnist_binary_subset,
    order_stat_representation_check,
    predict,
    predict_batch,
    raw_score,
    run_verify_suite,
    sample_1d_mixture,
    sample_ball_annulus,
    sample_sphere_cap,
    tempered_constant,
)

__all__ = [
    "AgreementReport",
    "KsReport",
    "ScoreResult",
    "TailReport",
    "TrainingSet",
    "add_gaussian_input_noise",
    "beta_sweep",
    "catastrophic_mass_bound",
    "exp_partial_sum_tail",
    "flip_labels",
    "knn_agreement_unit_cube",
    "knn_predict",
    "load_idx",
    "mnist_binary_subset",
    "order_stat_representation_check",
    "predict",
    "predict_batch",
    "raw_score",
    "run_verify_suite",
    "sample_1d_mixture",
    "sample_ball_annulus",
    "sample_sphere_cap",
    "tempered_constant",
]
