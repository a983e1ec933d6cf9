"""topikrank: topic extraction, topic-network centrality, topic navigator.

Pipeline: ingest a blog corpus -> train LDA by collapsed Gibbs sampling ->
build weighted topic networks (cosine / pearson similarity of topic-document
features) -> rank topics by weighted PageRank -> serve an interactive
navigator over the ranked topics and their most relevant documents.
"""

from .corpus import (
    Corpus,
    Vocabulary,
    build_corpus,
    load_corpus,
    load_stoplist,
    parse_blog_file,
    remove_stopwords,
    save_corpus,
    tokenize,
)
from .errors import (
    ArtifactMismatchError,
    ConvergenceError,
    TopikrankError,
    ValidationError,
)
from .lda import (
    GibbsState,
    LdaConfig,
    LdaModel,
    estimate_phi,
    estimate_theta,
    export_doc_topics,
    gibbs_sweep,
    import_doc_topics,
    init_state,
    load_model,
    save_model,
    top_words,
    train,
)
from .network import TopicNetwork, build_network, cosine, load_network, pearson, save_network
from .pagerank import (
    CentralityScores,
    PagerankConfig,
    load_scores,
    pagerank,
    rank_topics,
    save_scores,
)
from .ranking import document_ranking, load_labels
from .cloud import TopicCloudLayout, layout_cloud, render_cloud
from .navindex import NavigatorIndex, build_navigator_index, load_index, save_index
from .service import create_app

__version__ = "0.1.0"
