"""Detects machine-written news articles from writing style.

Pipeline: corpus ingestion and splitting, tokenization and POS tagging,
13-dimensional stylometric feature vectors and fixed-length tag
sequences, three classifiers (boosted trees, feed-forward net,
bidirectional LSTM), an evaluation harness, and a human-baseline study
service.
"""

__version__ = "0.1.0"
