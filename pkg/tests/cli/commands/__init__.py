# CLI command tests package
