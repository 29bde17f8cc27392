"""Link-level simulator for a fixed mmWave multi-user MIMO downlink driving a
16x16 multi-beam (Butler) antenna array, with a patch-array baseline."""

__version__ = "0.1.0"
