import hypothesis

# Property tests do real linear solves; wall-clock deadlines only add noise.
# Derandomized so the whole suite is reproducible run to run.
hypothesis.settings.register_profile(
    "solver", deadline=None, max_examples=50, derandomize=True
)
hypothesis.settings.load_profile("solver")
