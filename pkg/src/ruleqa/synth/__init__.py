from .generator import SynthConfig, SynthCorpus, generate_corpus

__all__ = ["SynthConfig", "SynthCorpus", "generate_corpus"]
