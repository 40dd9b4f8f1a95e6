package learnlib.classify;

import java.util.HashMap;
import java.util.Map;

public class BayesClassifier {
    private final Map<String, Double> priors = new HashMap<>();

    public void observe(String category, double weight) {
        priors.merge(category, weight, Double::sum);
    }

    public String classify(double[] features) {
        String best = null;
        double bestScore = Double.NEGATIVE_INFINITY;
        for (Map.Entry<String, Double> entry : priors.entrySet()) {
            if (entry.getValue() > bestScore) {
                bestScore = entry.getValue();
                best = entry.getKey();
            }
        }
        return best;
    }
}
