# Lindbrand: decoherence rates of randomly generated Lindblad dynamics

__version__ = "0.1.0"
