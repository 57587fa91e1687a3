"""
behgan
======

Word-level handwriting synthesis over a small character vocabulary
with a semi-supervised GAN: a character-conditional generator, a
variable-width patch critic and a CTC recognizer, together with the
dataset pipeline and the SSIM/FID/geometry score evaluation harness.
"""

__version__ = "0.1.0"
