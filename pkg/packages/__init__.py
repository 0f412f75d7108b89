# Packages for the noir tag classification pipeline
