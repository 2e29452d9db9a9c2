from .augmentation import AugmentationData, augmentation_eval, build_augmentation, n_gamma_member
from .remark import check_remark_identity, delta, remark_embedding
from .sl2 import SL2Construction, build_sl2, invariant_subgroups, pi_ab_apply, sl2_difference_span
from .snf import invariant_factors, smith_normal_form
from .ulm import UlmGroup, natural_map_respects_relations, ulm_group

__all__ = [
    "AugmentationData",
    "SL2Construction",
    "UlmGroup",
    "augmentation_eval",
    "build_augmentation",
    "build_sl2",
    "check_remark_identity",
    "delta",
    "invariant_factors",
    "invariant_subgroups",
    "n_gamma_member",
    "natural_map_respects_relations",
    "pi_ab_apply",
    "remark_embedding",
    "sl2_difference_span",
    "smith_normal_form",
    "ulm_group",
]
