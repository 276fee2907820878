# Secrecy rate regions for the two-user MAC with generalized feedback and confidential messages
__version__ = "0.3.0"
