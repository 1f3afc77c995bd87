"""Corpus analytics for meal-related social posts.

Submodules:

- ``corpus``     ingestion, hashtag filtering, snapshots, statistics
- ``geonorm``    gazetteer location normalization, regions, local time
- ``text``       tokenization, token filtering, vocabularies
- ``topics``     LDA by collapsed Gibbs sampling, fold-in inference
- ``learn``      sparse group features, linear SVM training
- ``tasks``      LOOCV / locale protocols, bootstrap tests, synthetic corpora
- ``analytics``  tf-idf top terms, histograms, heatmap grids, word clouds
- ``gateway``    CLI and the read-only HTTP query service
"""

__version__ = "0.1.0"
