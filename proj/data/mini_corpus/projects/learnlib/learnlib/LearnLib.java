package learnlib;

public final class LearnLib {
    public static final String VERSION = "0.3.1";

    private LearnLib() {
    }
}
