"""Rule-sensitive comment moderation as question answering.

Subpackages:
    ingest    - federated modlog harvesting and record filtering
    rules     - rule extraction, reason matching, category tagging
    dataset   - QA example assembly, augmentation, splits, imports
    models    - extract/select QA models and per-community baselines
    evalkit   - metrics, confusion matrices, generalization reports
    service   - HTTP inference API
    synth     - deterministic synthetic benchmark corpus
"""

__version__ = "0.1.0"
