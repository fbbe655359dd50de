"""
Pipeline runner and corpus runner
"""
from app.apps.pipeline.utils.corpus import load_manifest, run_corpus, run_corpus_async
from app.apps.pipeline.utils.runner import run_pipeline

__all__ = ['run_pipeline', 'run_corpus', 'run_corpus_async', 'load_manifest']
