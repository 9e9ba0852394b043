"""Interlinked-cycle covers for broadcast index coding over GF(2).

Build k-path templates, embed them in side-information digraphs, emit
XOR codes of length n - k + 1 with per-receiver structural decoders, and
certify validity and optimality with independent rank and acyclic-bound
oracles.
"""

from .codec import (
    CodedSymbol,
    IndexCode,
    PacketVector,
    code_length,
    decode_receiver,
    encode,
    new_packet_vector,
    parse_code,
    parse_packets,
    parse_side,
    serialize_code,
    serialize_packets,
    serialize_side,
    xor_op_count,
)
from .digraph import (
    Cycle,
    Digraph,
    enumerate_cycles,
    induced_subdigraph,
    new_digraph,
    parse_digraph,
    serialize_digraph,
    side_info,
)
from .errors import (
    DecodeFailure,
    EmbeddingError,
    FormatError,
    IccoverError,
    InvalidCode,
    InvalidDigraph,
    InvalidTemplate,
    MissingCodedSymbol,
    MissingSidePacket,
    SizeRefusal,
)
from .finder import DEFAULT_EXACT_BOUND, CoverPlan, find_icc_subgraphs, make_plan
from .oracles import (
    Gf2Matrix,
    Lemma2Result,
    OptimalityReport,
    VerifyResult,
    certify_optimality,
    check_lemma2,
    code_matrix,
    gf2_decodable,
    gf2_in_span,
    gf2_rank,
    mais,
    mais_exhaustive,
    verify_code,
)
from .schemes import (
    SchemeReport,
    assemble_code,
    clique_cover,
    compare,
    cycle_cover,
    gap_family,
    icc_cover,
    plan_length,
    serialize_report,
)
from .template import (
    IccTemplate,
    build_digraph,
    canonical_labeling,
    check_embedding,
    clique_to_template,
    cycle_to_template,
    parse_template,
    random_template,
    serialize_template,
    validate_template,
)

__version__ = "0.1.0"

__all__ = [
    "CodedSymbol",
    "CoverPlan",
    "Cycle",
    "DEFAULT_EXACT_BOUND",
    "DecodeFailure",
    "Digraph",
    "EmbeddingError",
    "FormatError",
    "Gf2Matrix",
    "IccTemplate",
    "IccoverError",
    "IndexCode",
    "InvalidCode",
    "InvalidDigraph",
    "InvalidTemplate",
    "Lemma2Result",
    "MissingCodedSymbol",
    "MissingSidePacket",
    "OptimalityReport",
    "PacketVector",
    "SchemeReport",
    "SizeRefusal",
    "VerifyResult",
    "assemble_code",
    "build_digraph",
    "canonical_labeling",
    "certify_optimality",
    "check_embedding",
    "check_lemma2",
    "clique_cover",
    "clique_to_template",
    "code_length",
    "code_matrix",
    "compare",
    "cycle_cover",
    "cycle_to_template",
    "decode_receiver",
    "encode",
    "enumerate_cycles",
    "find_icc_subgraphs",
    "gap_family",
    "gf2_decodable",
    "gf2_in_span",
    "gf2_rank",
    "icc_cover",
    "induced_subdigraph",
    "mais",
    "mais_exhaustive",
    "make_plan",
    "new_digraph",
    "new_packet_vector",
    "parse_code",
    "parse_digraph",
    "parse_packets",
    "parse_side",
    "parse_template",
    "plan_length",
    "random_template",
    "serialize_code",
    "serialize_digraph",
    "serialize_packets",
    "serialize_report",
    "serialize_side",
    "serialize_template",
    "side_info",
    "validate_template",
    "verify_code",
    "xor_op_count",
]
