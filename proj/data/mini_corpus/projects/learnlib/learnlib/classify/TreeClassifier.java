package learnlib.classify;

public class TreeClassifier {
    private int maxDepth = 6;

    public enum Split { LEFT, RIGHT }

    public Split decide(double feature, double threshold) {
        return feature <= threshold ? Split.LEFT : Split.RIGHT;
    }

    public void setMaxDepth(int maxDepth) {
        this.maxDepth = maxDepth;
    }
}
