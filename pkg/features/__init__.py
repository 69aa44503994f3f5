# Feature modules
# Clustering, automatic k, quality metrics and the experiment harness
