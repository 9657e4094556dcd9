"""
Dilaton Discord - quantum discord and measurement-induced disturbance of
fermionic modes near a dilaton black hole.
"""

__version__ = "0.1.0"
