# CLI job and report models
